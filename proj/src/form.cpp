#include "sphier/form.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace sphier {

Form::Form(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1 || degree < 0) throw std::invalid_argument("Form: need n >= 1, degree >= 0");
}

void Form::check_key(const MultiIndex& a) const {
  if (a.n() != n_ || a.degree() != degree_)
    throw std::invalid_argument("Form: monomial " + a.str() + " does not match (n=" +
                                std::to_string(n_) + ", degree=" + std::to_string(degree_) + ")");
}

double Form::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? 0.0 : it->second;
}

void Form::set_coeff(const MultiIndex& a, double c) {
  check_key(a);
  if (c == 0.0)
    terms_.erase(a);
  else
    terms_[a] = c;
}

void Form::add_coeff(const MultiIndex& a, double c) { set_coeff(a, coeff(a) + c); }

double Form::max_abs_coeff() const {
  double m = 0;
  for (auto& [a, c] : terms_) m = std::max(m, std::fabs(c));
  return m;
}

double Form::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("evaluate: wrong point size");
  double acc = 0;  // terms accumulated in basis order
  for (auto& [a, c] : terms_) {
    double t = c;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < a[i]; ++k) t *= x[static_cast<size_t>(i)];
    acc += t;
  }
  return acc;
}

Form Form::laplacian() const {
  Form out(n_, degree_ >= 2 ? degree_ - 2 : 0);
  if (degree_ < 2) return out;
  for (auto& [a, c] : terms_) {
    for (int i = 0; i < n_; ++i) {
      if (a[i] >= 2) {
        MultiIndex b = a;
        b.e[static_cast<size_t>(i)] -= 2;
        out.add_coeff(b, c * a[i] * (a[i] - 1));
      }
    }
  }
  return out;
}

Form Form::partial(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("partial: bad variable index");
  Form out(n_, degree_ >= 1 ? degree_ - 1 : 0);
  if (degree_ < 1) return out;
  for (auto& [a, c] : terms_) {
    if (a[i] >= 1) {
      MultiIndex b = a;
      b.e[static_cast<size_t>(i)] -= 1;
      out.add_coeff(b, c * a[i]);
    }
  }
  return out;
}

Form Form::pruned(double tol) const {
  Form out(n_, degree_);
  for (auto& [a, c] : terms_)
    if (std::fabs(c) > tol) out.terms_[a] = c;
  return out;
}

Form& Form::operator+=(const Form& g) {
  if (n_ != g.n_ || degree_ != g.degree_)
    throw std::invalid_argument("Form +=: mismatched n or degree");
  for (auto& [a, c] : g.terms_) add_coeff(a, c);
  return *this;
}

Form& Form::operator-=(const Form& g) {
  if (n_ != g.n_ || degree_ != g.degree_)
    throw std::invalid_argument("Form -=: mismatched n or degree");
  for (auto& [a, c] : g.terms_) add_coeff(a, -c);
  return *this;
}

Form& Form::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

Form operator*(const Form& f, const Form& g) {
  if (f.n_ != g.n_) throw std::invalid_argument("Form *: mismatched n");
  Form out(f.n_, f.degree_ + g.degree_);
  for (auto& [a, ca] : f.terms_)
    for (auto& [b, cb] : g.terms_) out.add_coeff(add(a, b), ca * cb);
  return out;
}

Form s_power(int n, int k) {
  Form out(n, 2 * k);
  for (auto& b : enumerate_multi(n, k)) {
    MultiIndex two = b;
    for (auto& v : two.e) v *= 2;
    out.set_coeff(two, static_cast<double>(multinomial(b)));
  }
  return out;
}

double apolar(const Form& f, const Form& g) {
  if (f.n() != g.n()) throw std::invalid_argument("apolar: mismatched n");
  if (f.degree() != g.degree()) return 0.0;
  double acc = 0;
  for (auto& [a, c] : f.terms()) {
    double cg = g.coeff(a);
    if (cg == 0.0) continue;
    double fact = 1;
    for (int i = 0; i < a.n(); ++i)
      for (int k = 2; k <= a[i]; ++k) fact *= k;
    acc += fact * c * cg;
  }
  return acc;
}

double max_coeff_diff(const Form& f, const Form& g) {
  double m = 0;
  for (auto& [a, c] : f.terms()) m = std::max(m, std::fabs(c - g.coeff(a)));
  for (auto& [a, c] : g.terms()) m = std::max(m, std::fabs(c - f.coeff(a)));
  return m;
}

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {
[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw std::invalid_argument("parse error at line " + std::to_string(line) + ": " + msg);
}

double parse_coeff(const std::string& tok, int line) {
  auto slash = tok.find('/');
  const char* s = tok.c_str();
  char* end = nullptr;
  if (slash == std::string::npos) {
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0') parse_fail(line, "bad coefficient '" + tok + "'");
    return v;
  }
  double num = std::strtod(s, &end);
  if (end != s + slash) parse_fail(line, "bad rational coefficient '" + tok + "'");
  const char* sd = s + slash + 1;
  double den = std::strtod(sd, &end);
  if (end == sd || *end != '\0' || den == 0.0)
    parse_fail(line, "bad rational coefficient '" + tok + "'");
  return num / den;
}
}  // namespace

Form parse_form(const std::string& text, int n) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  int degree = -1;
  std::vector<std::pair<MultiIndex, double>> entries;
  std::vector<std::string> offenders;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (n == 0) n = static_cast<int>(toks.size()) - 1;
    if (static_cast<int>(toks.size()) != n + 1)
      parse_fail(lineno, "expected " + std::to_string(n + 1) + " tokens (coefficient + " +
                             std::to_string(n) + " exponents), got " + std::to_string(toks.size()));
    double c = parse_coeff(toks[0], lineno);
    std::vector<int> expo(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::string& tok = toks[static_cast<size_t>(i) + 1];
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0' || v < 0)
        parse_fail(lineno, "bad exponent '" + tok + "'");
      expo[static_cast<size_t>(i)] = static_cast<int>(v);
    }
    MultiIndex a(expo);
    if (degree < 0) degree = a.degree();
    if (a.degree() != degree) offenders.push_back(a.str());
    entries.emplace_back(std::move(a), c);
  }
  if (n == 0) throw std::invalid_argument("parse error: empty form, cannot infer n");
  if (!offenders.empty()) {
    std::string msg = "inhomogeneous input: expected degree " + std::to_string(degree) +
                      ", offending monomials:";
    for (auto& s : offenders) msg += " (" + s + ")";
    throw std::invalid_argument(msg);
  }
  Form f(n, degree < 0 ? 0 : degree);
  for (auto& [a, c] : entries) f.add_coeff(a, c);
  return f;
}

std::string format_form(const Form& f) {
  std::string out;
  for (auto& [a, c] : f.terms()) {
    out += format_double(c);
    for (int i = 0; i < a.n(); ++i) {
      out += ' ';
      out += std::to_string(a[i]);
    }
    out += '\n';
  }
  return out;
}

Form random_form(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Form f(n, d);
  for (auto& a : enumerate_multi(n, d)) f.set_coeff(a, normal(rng));
  return f;
}

}  // namespace sphier
