#include "sphier/mindex.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace sphier {

MultiIndex::MultiIndex(std::vector<int> entries) : e(std::move(entries)) {
  for (int v : e)
    if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

int MultiIndex::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

std::string MultiIndex::str() const {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s;
}

bool basis_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.n() != b.n()) throw std::invalid_argument("basis_less: mismatched n");
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.e > b.e;  // within a degree: x1-major, largest first exponent first
}

size_t MultiIndexHash::operator()(const MultiIndex& m) const {
  size_t h = 1469598103934665603ull;
  for (int v : m.e) {
    h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {
void enumerate_rec(int n, int d, int pos, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur.e[static_cast<size_t>(pos)] = d;
    out.push_back(cur);
    return;
  }
  for (int a = d; a >= 0; --a) {
    cur.e[static_cast<size_t>(pos)] = a;
    enumerate_rec(n, d - a, pos + 1, cur, out);
  }
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow");
  return r;
}
}  // namespace

std::vector<MultiIndex> enumerate_multi(int n, int d) {
  if (n < 1 || d < 0) throw std::invalid_argument("enumerate_multi: need n >= 1, d >= 0");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<size_t>(dim_sym(n, d)));
  MultiIndex cur;
  cur.e.assign(static_cast<size_t>(n), 0);
  enumerate_rec(n, d, 0, cur, out);
  return out;
}

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    // r * (n-k+i) is divisible by i at every step
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

long long multinomial(const MultiIndex& alpha) {
  long long r = 1, s = 0;
  for (int a : alpha.e) {
    s += a;
    r = checked_mul(r, binom(s, a));
  }
  return r;
}

long long multinomial(int d, const MultiIndex& alpha) {
  if (alpha.degree() != d) throw std::invalid_argument("multinomial: |alpha| != d");
  return multinomial(alpha);
}

long long dim_sym(int n, int d) { return binom(n + d - 1, d); }

MultiIndex multi_of_tensor(const std::vector<int>& seq, int n) {
  MultiIndex m;
  m.e.assign(static_cast<size_t>(n), 0);
  for (int i : seq) {
    if (i < 0 || i >= n) throw std::out_of_range("multi_of_tensor: index out of range");
    ++m.e[static_cast<size_t>(i)];
  }
  return m;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.n() != b.n()) throw std::invalid_argument("add: mismatched n");
  MultiIndex r = a;
  for (int i = 0; i < b.n(); ++i) r.e[static_cast<size_t>(i)] += b[i];
  return r;
}

bool try_sub(const MultiIndex& a, const MultiIndex& b, MultiIndex& out) {
  if (a.n() != b.n()) throw std::invalid_argument("sub: mismatched n");
  out.e.assign(a.e.begin(), a.e.end());
  for (int i = 0; i < a.n(); ++i) {
    out.e[static_cast<size_t>(i)] -= b[i];
    if (out.e[static_cast<size_t>(i)] < 0) return false;
  }
  return true;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r;
  if (!try_sub(a, b, r)) throw std::invalid_argument("sub: negative entry");
  return r;
}

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d), list_(enumerate_multi(n, d)) {
  rank_.reserve(list_.size());
  for (size_t i = 0; i < list_.size(); ++i) rank_.emplace(list_[i], static_cast<int>(i));
}

int MonomialBasis::rank(const MultiIndex& m) const {
  auto it = rank_.find(m);
  if (it == rank_.end()) throw std::out_of_range("MonomialBasis::rank: not in basis");
  return it->second;
}

int MonomialBasis::find(const MultiIndex& m) const {
  auto it = rank_.find(m);
  return it == rank_.end() ? -1 : it->second;
}

std::shared_ptr<const MonomialBasis> shared_basis(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot = std::make_shared<MonomialBasis>(n, d);
  return slot;
}

}  // namespace sphier
