#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace sphier {

// Exponent vector alpha in N^n.  Basis order is graded: lower total degree
// first, ties broken x1-major, so for n=2, d=2 the order is (2,0), (1,1), (0,2).
struct MultiIndex {
  std::vector<int> e;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  int n() const { return static_cast<int>(e.size()); }
  int degree() const;
  int operator[](int i) const { return e[static_cast<size_t>(i)]; }

  bool operator==(const MultiIndex&) const = default;
  std::string str() const;  // "a1,a2,...,an"
};

bool basis_less(const MultiIndex& a, const MultiIndex& b);
inline bool operator<(const MultiIndex& a, const MultiIndex& b) { return basis_less(a, b); }

struct MultiIndexHash {
  size_t operator()(const MultiIndex& m) const;
};

// All alpha in N^n with |alpha| = d, in basis order.  Size dim_sym(n, d).
std::vector<MultiIndex> enumerate_multi(int n, int d);

// Exact binomial / multinomial; throw std::overflow_error if the value
// does not fit in long long.
long long binom(long long n, long long k);
long long multinomial(const MultiIndex& alpha);         // C(|alpha|, alpha)
long long multinomial(int d, const MultiIndex& alpha);  // requires |alpha| == d

// dim S^d(R^n) = C(n+d-1, d)
long long dim_sym(int n, int d);

// Occurrence counts of a tensor index sequence (entries in {0,...,n-1}).
MultiIndex multi_of_tensor(const std::vector<int>& seq, int n);

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
// a - b; try_sub returns false if any entry would go negative.
bool try_sub(const MultiIndex& a, const MultiIndex& b, MultiIndex& out);
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);

// Indexed view of enumerate_multi(n, d) with O(1) rank lookup.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d);
  int n() const { return n_; }
  int degree() const { return d_; }
  int size() const { return static_cast<int>(list_.size()); }
  const MultiIndex& operator[](int i) const { return list_[static_cast<size_t>(i)]; }
  const std::vector<MultiIndex>& list() const { return list_; }
  int rank(const MultiIndex& m) const;  // throws std::out_of_range if absent
  int find(const MultiIndex& m) const;  // -1 if absent

 private:
  int n_, d_;
  std::vector<MultiIndex> list_;
  std::unordered_map<MultiIndex, int, MultiIndexHash> rank_;
};

// Process-wide memoized bases (thread safe); matrices hold these by pointer.
std::shared_ptr<const MonomialBasis> shared_basis(int n, int d);

}  // namespace sphier
