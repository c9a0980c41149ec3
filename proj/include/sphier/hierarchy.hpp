#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphier/form.hpp"
#include "sphier/sdp.hpp"
#include "sphier/symmat.hpp"

namespace sphier {

struct BoundReport {
  std::string p_id;
  int r = 0;
  std::string method;  // "spectral" or "sos"
  double value = 0;
  double floor = std::numeric_limits<double>::quiet_NaN();  // theory floor, when one applies
  double wall_ms = 0;
  int matrix_size = 0;  // pencil dimension resp. Gram side
  int num_vars = 0;     // SDP variables (sos only)
  SdpStatus status = SdpStatus::Optimal;
  double lambda_min_M = 0;  // pencil diagnostics
  double lambda_max_M = 0;
  double gram_min_eig = 0;   // sos audit: smallest eigenvalue of returned Gram
  double gram_residual = 0;  // sos audit: max coefficient mismatch of the re-expansion
};

// Lifted pencil at level r: Q_r represents s^{r-d}p, M_r represents s^r,
// both over the compressed degree-r basis.
std::pair<SymMatrix, SymMatrix> build_Qr_Mr(const Form& p, int r, int size_cap = 1200);

// Largest nu with Q_r - nu M_r psd, i.e. the smallest generalized eigenvalue.
BoundReport spectral_bound(const Form& p, int r, int size_cap = 1200);

// The sos SDP in raw Gram coordinates: maximize y_0 subject to
// F0 + sum_k y_k F_k psd, with y_0 * scale the bound.  Coefficients are
// normalized so the largest one of s^{r-d}p is 1.
struct SosSdp {
  SdpProblem problem;
  double scale = 1;
};
SosSdp assemble_sos_sdp(const Form& p, int r, int gram_cap = 200);

// Largest lambda with s^{r-d} p - lambda s^r a sum of squares, solved as an
// SDP over Gram matrices indexed by monomials of degree r.  `gram_out`, when
// given, receives the certificate Gram matrix over the degree-r basis.
BoundReport sos_bound(const Form& p, int r, const SdpOptions& opt = {}, int gram_cap = 200,
                      Eigen::MatrixXd* gram_out = nullptr);

// The quartic in four variables that is nonnegative but not a sum of squares.
Form choi_lam();

// Same coefficients viewed in more variables.
Form embed(const Form& p, int n_new);

// max{lambda_max(Q(p)) - sp_d(p), p_min - lambda_min(Q(p))} with Q(p) the
// compressed matrix of p.  The one-argument overload estimates p_min by
// multi-start search.
double gamma_const(const Form& p, double p_min);
double gamma_const(const Form& p);

struct KappaReport {
  int n = 0, d = 0;
  double lambda_min = 0, lambda_max = 0;
  double kappa = 0;        // condition number of the compressed matrix of s^d
  double conjectured = 0;  // binomial(n/2 + d - 1, floor(d/2)) with real upper argument
};
KappaReport kappa_report(int n, int d);

struct ChoiLamRow {
  int r = 0;
  BoundReport spectral;
  std::optional<BoundReport> sos;
  double floor = 0;  // (lambda_min(M)/lambda_max(M)) |sp_2| / binom(r,2)
  bool pass = false; // sp_r < 0 and |sp_r| >= floor - 1e-9
};

struct ChoiLamResult {
  std::vector<ChoiLamRow> rows;
  double sp2 = 0;
  double lambda_min_M = 0, lambda_max_M = 0;  // M = matrix of s^2, five variables
  bool all_pass = false;
};

// Five-variable embedding of the quartic, levels r = 2..r_max; sos rows are
// computed while the Gram problem stays small (r <= sos_r_max).
ChoiLamResult choi_lam_experiment(int r_max = 6, int sos_r_max = 3, int threads = 0);

}  // namespace sphier
