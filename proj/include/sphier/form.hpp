#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "sphier/mindex.hpp"

namespace sphier {

// Homogeneous polynomial over R^n.  Sparse coefficient map keyed by exponent
// vector in basis order; zero coefficients are never stored.
class Form {
 public:
  Form() : n_(1), degree_(0) {}
  Form(int n, int degree);

  int n() const { return n_; }
  int degree() const { return degree_; }
  double coeff(const MultiIndex& a) const;  // 0 if absent
  void set_coeff(const MultiIndex& a, double c);
  void add_coeff(const MultiIndex& a, double c);
  const std::map<MultiIndex, double>& terms() const { return terms_; }
  int term_count() const { return static_cast<int>(terms_.size()); }
  bool is_zero() const { return terms_.empty(); }
  double max_abs_coeff() const;

  double evaluate(const std::vector<double>& x) const;
  Form laplacian() const;
  Form partial(int i) const;  // d/dx_i, degree drops by one
  Form pruned(double tol) const;

  Form& operator+=(const Form& g);
  Form& operator-=(const Form& g);
  Form& operator*=(double c);
  friend Form operator+(Form f, const Form& g) { return f += g; }
  friend Form operator-(Form f, const Form& g) { return f -= g; }
  friend Form operator*(Form f, double c) { return f *= c; }
  friend Form operator*(double c, Form f) { return f *= c; }
  friend Form operator*(const Form& f, const Form& g);  // degree adds

 private:
  int n_;
  int degree_;
  std::map<MultiIndex, double> terms_;
  void check_key(const MultiIndex& a) const;
};

// (x_1^2 + ... + x_n^2)^k
Form s_power(int n, int k);

// Apolar inner product sum_a a! f_a g_a (0 when degrees differ).
double apolar(const Form& f, const Form& g);

// max_a |f_a - g_a|
double max_coeff_diff(const Form& f, const Form& g);

// Text format: one term per line, "coefficient a_1 ... a_n"; '#' starts a
// comment; coefficients decimal or rational p/q.  n == 0 infers the variable
// count from the first term line.
Form parse_form(const std::string& text, int n = 0);
std::string format_form(const Form& f);
std::string format_double(double v);  // shortest round-trip decimal

// Dense random form: iid N(0,1) coefficients on every degree-d monomial.
Form random_form(int n, int d, std::mt19937_64& rng);

}  // namespace sphier
