#include "sphier/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sphier/definetti.hpp"
#include "sphier/dense_tensor.hpp"
#include "sphier/form.hpp"
#include "sphier/harmonic.hpp"
#include "sphier/hierarchy.hpp"
#include "sphier/mindex.hpp"
#include "sphier/symmat.hpp"

namespace sphier::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string poly_path;
  int r = 2;
  int rmax = 6;
  int sos_rmax = 3;
  int counter_rmax = 5;
  int const_dmax = 6;
  int n = 2;
  int d = 2;
  std::vector<int> r_list;
  std::string method = "both";
  std::string kind = "banded";
  int trials = 5;
  std::uint64_t seed = 0;
  int threads = 0;
  int size_cap = 1200;
  int gram_cap = 200;
  double feas_tol = SdpOptions{}.feas_tol;
  double gap_tol = SdpOptions{}.gap_tol;
  std::string out_path;
  std::string dump_matrix;
  std::string dump_sdp;
};

// --- output plumbing ------------------------------------------------------

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  return format_double(v.get<double>());
}

std::string meta_string(const json& v) {
  if (!v.is_array()) return cell(v);
  std::string s;
  for (const auto& e : v) {
    if (!s.empty()) s += ',';
    s += cell(e);
  }
  return s;
}

void write_csv(const json& doc, const std::vector<std::string>& header, std::ostream& os) {
  os << "# schema=" << doc.at("schema").get<int>()
     << " subcommand=" << doc.at("subcommand").get<std::string>()
     << " seed=" << doc.at("seed").get<std::uint64_t>() << '\n';
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema" || key == "subcommand" || key == "seed" || key == "rows") continue;
    os << "# " << key << '=' << meta_string(value) << '\n';
  }
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : doc.at("rows")) {
    for (size_t i = 0; i < header.size(); ++i) {
      os << (i ? "," : "");
      if (row.contains(header[i])) os << cell(row.at(header[i]));
    }
    os << '\n';
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Table (or any renderer) to stdout or to --out; the renderer writes the
// text form, JSON files get the document itself.
template <typename Renderer>
int emit(const json& doc, const std::string& out_path, Renderer render_text, std::ostream& out,
         std::ostream& err) {
  if (out_path.empty()) {
    render_text(out);
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    err << "error: cannot open " << out_path << " for writing\n";
    return 1;
  }
  if (ends_with(out_path, ".json"))
    f << doc.dump(2) << '\n';
  else
    render_text(f);
  err << "wrote " << out_path << '\n';
  return 0;
}

int emit_table(const json& doc, const std::vector<std::string>& header,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  return emit(doc, out_path, [&](std::ostream& os) { write_csv(doc, header, os); }, out, err);
}

// --- debug dumps ----------------------------------------------------------

std::string mi_label(const MultiIndex& a) {
  std::string s;
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a.e[i]);
  }
  return s;
}

void dump_sym_block(std::ostream& os, const std::string& name, const SymMatrix& m) {
  const MonomialBasis& b = m.basis();
  os << "# matrix=" << name << " n=" << m.n() << " d=" << m.d() << '\n';
  os << "\"\"";
  for (int i = 0; i < m.size(); ++i) os << ",\"" << mi_label(b[i]) << "\"";
  os << '\n';
  for (int i = 0; i < m.size(); ++i) {
    os << '"' << mi_label(b[i]) << '"';
    for (int j = 0; j < m.size(); ++j) os << ',' << format_double(m.mat()(i, j));
    os << '\n';
  }
}

void dump_sdp_text(std::ostream& os, const SosSdp& sdp) {
  const SdpProblem& p = sdp.problem;
  const int nn = static_cast<int>(p.F0.rows());
  const int m = static_cast<int>(p.Fs.size());
  os << "# sdp: maximize b.y subject to F0 + sum_k y_k F_k psd\n";
  os << "# gram_side=" << nn << " variables=" << m << " scale=" << format_double(sdp.scale)
     << '\n';
  os << "# lines: `b i value` and `F k i j value` (k=0 is F0; upper triangle, nonzeros)\n";
  for (int i = 0; i < m; ++i)
    if (p.b[i] != 0) os << "b " << i << ' ' << format_double(p.b[i]) << '\n';
  auto dump_mat = [&](int k, const Eigen::MatrixXd& f) {
    for (int i = 0; i < nn; ++i)
      for (int j = i; j < nn; ++j)
        if (f(i, j) != 0) os << "F " << k << ' ' << i << ' ' << j << ' ' << format_double(f(i, j)) << '\n';
  };
  dump_mat(0, p.F0);
  for (int k = 0; k < m; ++k) dump_mat(k + 1, p.Fs[k]);
}

int write_dump(const std::string& path, const std::function<void(std::ostream&)>& body,
               std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  body(f);
  err << "wrote " << path << '\n';
  return 0;
}

Form read_form_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read polynomial file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_form(ss.str());
}

json base_doc(const std::string& subcommand, std::uint64_t seed) {
  return json{{"schema", 1}, {"subcommand", subcommand}, {"seed", seed}};
}

int finish(bool all_pass, int failed, std::ostream& err) {
  if (!all_pass) err << failed << " asserted check(s) failed\n";
  return all_pass ? 0 : 1;
}

// --- subcommands ----------------------------------------------------------

int run_bounds(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Form p = read_form_file(c.poly_path);
  const bool want_sp = c.method != "sos";
  const bool want_sos = c.method != "spectral";

  json rows = json::array();
  int failed = 0;
  double sp_value = 0, sos_value = 0;

  if (want_sp) {
    BoundReport rep = spectral_bound(p, c.r, c.size_cap);
    sp_value = rep.value;
    rows.push_back({{"r", rep.r},
                    {"method", "spectral"},
                    {"value", rep.value},
                    {"matrix_size", rep.matrix_size},
                    {"status", to_string(rep.status)}});
    err << "spectral r=" << c.r << ": " << format_double(rep.value) << "  (pencil "
        << rep.matrix_size << "x" << rep.matrix_size << ", " << format_double(rep.wall_ms)
        << " ms)\n";
  }
  if (want_sos) {
    SdpOptions opt;
    opt.feas_tol = c.feas_tol;
    opt.gap_tol = c.gap_tol;
    Eigen::MatrixXd gram;
    BoundReport rep = sos_bound(p, c.r, opt, c.gram_cap, c.dump_matrix.empty() ? nullptr : &gram);
    sos_value = rep.value;
    if (rep.status != SdpStatus::Optimal) ++failed;
    rows.push_back({{"r", rep.r},
                    {"method", "sos"},
                    {"value", rep.value},
                    {"matrix_size", rep.matrix_size},
                    {"status", to_string(rep.status)}});
    err << "sos r=" << c.r << ": " << format_double(rep.value) << "  (" << to_string(rep.status)
        << ", gram " << rep.matrix_size << "x" << rep.matrix_size << ", " << rep.num_vars
        << " vars, " << format_double(rep.wall_ms) << " ms)\n";
    err << "sos audit: gram_min_eig=" << format_double(rep.gram_min_eig)
        << " gram_residual=" << format_double(rep.gram_residual) << '\n';
    if (!c.dump_matrix.empty() && c.method == "sos") {
      int rc = write_dump(c.dump_matrix,
                          [&](std::ostream& os) {
                            SymMatrix g(p.n(), c.r);
                            g.mat() = gram;
                            dump_sym_block(os, "sos_gram", g);
                          },
                          err);
      if (rc) return rc;
    } else if (!c.dump_matrix.empty()) {
      auto [qr, mr] = build_Qr_Mr(p, c.r, c.size_cap);
      int rc = write_dump(c.dump_matrix,
                          [&](std::ostream& os) {
                            dump_sym_block(os, "Q_r", qr);
                            os << '\n';
                            dump_sym_block(os, "M_r", mr);
                            if (!gram.size()) return;
                            os << '\n';
                            SymMatrix g(p.n(), c.r);
                            g.mat() = gram;
                            dump_sym_block(os, "sos_gram", g);
                          },
                          err);
      if (rc) return rc;
    }
    if (!c.dump_sdp.empty()) {
      SosSdp sdp = assemble_sos_sdp(p, c.r, c.gram_cap);
      int rc = write_dump(c.dump_sdp, [&](std::ostream& os) { dump_sdp_text(os, sdp); }, err);
      if (rc) return rc;
    }
  } else if (!c.dump_matrix.empty()) {
    auto [qr, mr] = build_Qr_Mr(p, c.r, c.size_cap);
    int rc = write_dump(c.dump_matrix,
                        [&](std::ostream& os) {
                          dump_sym_block(os, "Q_r", qr);
                          os << '\n';
                          dump_sym_block(os, "M_r", mr);
                        },
                        err);
    if (rc) return rc;
  }

  if (want_sp && want_sos && sp_value > sos_value + 1e-6) {
    ++failed;
    err << "sandwich violated: spectral " << format_double(sp_value) << " > sos "
        << format_double(sos_value) << '\n';
  }

  json doc = base_doc("bounds", c.seed);
  doc["poly"] = c.poly_path;
  doc["rows"] = std::move(rows);
  int rc = emit_table(doc, {"r", "method", "value", "matrix_size", "status"}, c.out_path, out, err);
  if (rc) return rc;
  return finish(failed == 0, failed, err);
}

int run_choi_lam(const RunConfig& c, std::ostream& out, std::ostream& err) {
  ChoiLamResult res = choi_lam_experiment(c.rmax, c.sos_rmax, c.threads);

  json rows = json::array();
  int failed = 0;
  for (const ChoiLamRow& row : res.rows) {
    bool pass = row.pass;
    json sos = nullptr;
    if (row.sos) {
      sos = row.sos->value;
      pass = pass && row.sos->value + 1e-6 >= row.spectral.value;  // sandwich
    }
    if (!pass) ++failed;
    rows.push_back({{"r", row.r},
                    {"spectral", row.spectral.value},
                    {"floor", row.floor},
                    {"sos", sos},
                    {"pass", pass}});
    err << "r=" << row.r << " spectral=" << format_double(row.spectral.value)
        << " floor=" << format_double(row.floor)
        << (row.sos ? " sos=" + format_double(row.sos->value) : "") << (pass ? "" : "  FAIL")
        << '\n';
  }

  json doc = base_doc("choi-lam", c.seed);
  doc["sp2"] = res.sp2;
  doc["lambda_min_M"] = res.lambda_min_M;
  doc["lambda_max_M"] = res.lambda_max_M;
  doc["rows"] = std::move(rows);
  int rc = emit_table(doc, {"r", "spectral", "floor", "sos", "pass"}, c.out_path, out, err);
  if (rc) return rc;
  return finish(failed == 0, failed, err);
}

int run_counterexample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  DenseTensorMatrix rho2 = rho_r(2);
  MaxsymDistance base = maxsym_distance(rho2);
  err << "maxsym distance of the two-register marginal: "
      << format_double(base.schatten1) << " (Schatten-1)\n";

  json rows = json::array();
  int failed = 0;
  for (int r = 2; r <= c.counter_rmax; ++r) {
    DenseTensorMatrix rho = rho_r(r);
    DenseTensorMatrix marg = r > 2 ? rho.partial_trace_last(r - 2) : rho;
    double gap = (marg.mat() - rho2.mat()).cwiseAbs().maxCoeff();
    MaxsymDistance dist = maxsym_distance(marg);
    double trace = rho.mat().trace().real();
    bool pass = gap <= 1e-12 && dist.schatten1 > 0.1 &&
                std::abs(dist.schatten1 - base.schatten1) <= 1e-12;
    if (!pass) ++failed;
    rows.push_back({{"r", r},
                    {"trace", trace},
                    {"marginal_gap", gap},
                    {"distance1", dist.schatten1},
                    {"distanceF", dist.frobenius},
                    {"pass", pass}});
  }

  json doc = base_doc("definetti-counterexample", c.seed);
  doc["rows"] = std::move(rows);
  int rc = emit_table(doc, {"r", "trace", "marginal_gap", "distance1", "distanceF", "pass"},
                      c.out_path, out, err);
  if (rc) return rc;
  return finish(failed == 0, failed, err);
}

json decay_rows(const std::vector<DecayRow>& rows, int* failed) {
  json out = json::array();
  for (const DecayRow& row : rows) {
    if (!row.pass) ++*failed;
    out.push_back({{"n", row.n},
                   {"d", row.d},
                   {"r", row.r},
                   {"trial", row.trial},
                   {"distance1", row.distance1},
                   {"distanceF", row.distanceF},
                   {"bound", row.bound},
                   {"alpha", row.alpha},
                   {"atoms", row.atoms},
                   {"pass", row.pass}});
  }
  return out;
}

const std::vector<std::string> kDefinettiHeader = {
    "n", "d", "r", "trial", "distance1", "distanceF", "bound", "alpha", "atoms", "pass"};

int run_banded(const RunConfig& c, std::ostream& out, std::ostream& err) {
  DecayResult res = decay_experiment(DecayKind::Banded, c.n, c.d, {c.r}, c.trials, c.seed,
                                     c.threads);
  int failed = 0;
  json doc = base_doc("definetti-banded", c.seed);
  doc["rows"] = decay_rows(res.rows, &failed);
  err << "banded n=" << c.n << " d=" << c.d << " r=" << c.r << ": "
      << (c.trials - failed) << "/" << c.trials << " within the bound";
  if (failed) err << " (" << failed << " inconclusive: heuristic witness search, not a refutation)";
  err << '\n';
  int rc = emit_table(doc, kDefinettiHeader, c.out_path, out, err);
  if (rc) return rc;
  return finish(failed == 0, failed, err);
}

int run_decay(const RunConfig& c, std::ostream& out, std::ostream& err) {
  DecayKind kind = c.kind == "maxsym" ? DecayKind::MaxSym : DecayKind::Banded;
  DecayResult res = decay_experiment(kind, c.n, c.d, c.r_list, c.trials, c.seed, c.threads);

  int failed = 0;
  json doc = base_doc("definetti-decay", c.seed);
  doc["kind"] = c.kind;
  doc["r_list"] = c.r_list;
  doc["mean_distance1"] = res.mean_distance;
  doc["at_noise_floor"] = res.at_noise_floor;
  doc["slope"] = res.slope;
  doc["rows"] = decay_rows(res.rows, &failed);
  if (res.at_noise_floor)
    err << "decay: distances at noise floor, slope undefined\n";
  else
    err << "decay: fitted log-log slope " << format_double(res.slope) << '\n';
  int rc = emit_table(doc, kDefinettiHeader, c.out_path, out, err);
  if (rc) return rc;
  return finish(failed == 0, failed, err);
}

int run_constants(const RunConfig& c, std::ostream& out, std::ostream& err) {
  json rows = json::array();
  int failed = 0;
  for (int d = 1; d <= c.const_dmax; ++d) {
    double alpha = alpha_d(d);
    double p0 = phi_d(0, d), pq = phi_d(0.25, d), ph = phi_d(0.5, d), p3 = phi_d(0.75, d),
           p1 = phi_d(1, d);
    json row = {{"d", d},          {"alpha", alpha},      {"phi_0", p0},
                {"phi_quarter", pq}, {"phi_half", ph},      {"phi_3quarter", p3},
                {"phi_1", p1}};
    bool pass = std::abs(ph - alpha) <= 1e-10 && std::abs(p0 - 1) <= 1e-10 &&
                std::abs(p1 - 1) <= 1e-10;
    try {
      ReznickFamily fam = reznick_vectors(d);
      row["reznick_coeff"] = fam.coefficient;
      row["reznick_residual"] = fam.residual;
      pass = pass && fam.residual <= 1e-10;
    } catch (const std::exception& e) {
      row["reznick_coeff"] = nullptr;
      row["reznick_residual"] = nullptr;
      pass = false;
      err << "d=" << d << ": " << e.what() << '\n';
    }
    row["pass"] = pass;
    if (!pass) ++failed;
    rows.push_back(std::move(row));
  }

  json doc = base_doc("definetti-constants", c.seed);
  doc["rows"] = std::move(rows);
  int rc = emit_table(doc,
                      {"d", "alpha", "phi_0", "phi_quarter", "phi_half", "phi_3quarter", "phi_1",
                       "reznick_coeff", "reznick_residual", "pass"},
                      c.out_path, out, err);
  if (rc) return rc;
  return finish(failed == 0, failed, err);
}

int run_harmonic(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Form p = read_form_file(c.poly_path);
  HarmonicDecomposition dec = harmonic_decompose(p);
  double residual = max_coeff_diff(recompose(dec), p);
  const int r = p.degree() / 2;

  json comps = json::array();
  for (size_t k = 0; k < dec.components.size(); ++k) {
    json terms = json::array();
    for (const auto& [idx, coeff] : dec.components[k].terms())
      terms.push_back({{"coeff", coeff}, {"expo", idx.e}});
    comps.push_back({{"k", k},
                     {"degree", 2 * static_cast<int>(k)},
                     {"s_power", r - static_cast<int>(k)},
                     {"terms", std::move(terms)}});
  }
  json doc = base_doc("harmonic", c.seed);
  doc["n"] = p.n();
  doc["degree"] = p.degree();
  doc["recomposition_residual"] = residual;
  doc["components"] = std::move(comps);

  auto render = [&](std::ostream& os) {
    os << "# schema=1 subcommand=harmonic seed=" << c.seed << '\n';
    os << "# n=" << p.n() << " degree=" << p.degree() << '\n';
    os << "# f = sum_k s^(r-k) h_k with h_k harmonic of degree 2k; blocks in form text format\n";
    for (size_t k = 0; k < dec.components.size(); ++k) {
      const Form& h = dec.components[k];
      os << "# component k=" << k << " degree=" << 2 * k << " s_power=" << r - static_cast<int>(k);
      if (h.terms().empty()) {
        os << " (zero)\n";
        continue;
      }
      os << '\n' << format_form(h);
    }
    os << "# recomposition_residual=" << format_double(residual) << '\n';
  };
  int rc = emit(doc, c.out_path, render, out, err);
  if (rc) return rc;

  bool pass = residual <= 1e-10;
  err << "harmonic components: " << dec.components.size()
      << ", recomposition residual: " << format_double(residual) << '\n';
  return finish(pass, pass ? 0 : 1, err);
}

int run_kappa(const RunConfig& c, std::ostream& out, std::ostream& err) {
  KappaReport rep = kappa_report(c.n, c.d);
  json doc = base_doc("kappa", c.seed);
  doc["rows"] = json::array({{{"n", rep.n},
                              {"d", rep.d},
                              {"lambda_min", rep.lambda_min},
                              {"lambda_max", rep.lambda_max},
                              {"kappa", rep.kappa},
                              {"conjectured_kappa", rep.conjectured}}});
  if (!c.dump_matrix.empty()) {
    int rc = write_dump(c.dump_matrix,
                        [&](std::ostream& os) {
                          dump_sym_block(os, "maxsym_s_d",
                                         maxsym_of_form(s_power(c.n, c.d)).as_sym_matrix());
                        },
                        err);
    if (rc) return rc;
  }
  err << "kappa(" << c.n << "," << c.d << ") = " << format_double(rep.kappa)
      << ", conjectured " << format_double(rep.conjectured) << " (reported, not asserted)\n";
  return emit_table(doc,
                    {"n", "d", "lambda_min", "lambda_max", "kappa", "conjectured_kappa"},
                    c.out_path, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Lower-bound hierarchies for forms on the unit sphere"};
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", c.out_path, "write the table to a .csv or .json file")
        ->check([](const std::string& s) {
          return ends_with(s, ".csv") || ends_with(s, ".json") ? std::string()
                                                               : "expected a .csv or .json path";
        });
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", c.threads,
                    "worker threads (0 = SPHERE_HIER_THREADS or hardware)");
  };

  CLI::App* bounds = app.add_subcommand("bounds", "spectral / sos lower bounds for a form");
  bounds->add_option("--poly", c.poly_path, "polynomial file (one `coeff e1 .. en` per line)")
      ->required();
  bounds->add_option("--r", c.r, "relaxation level")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--method", c.method, "spectral, sos, or both (default both)")
      ->check(CLI::IsMember({"spectral", "sos", "both"}));
  bounds->add_option("--size-cap", c.size_cap, "largest allowed pencil side");
  bounds->add_option("--gram-cap", c.gram_cap, "largest allowed Gram side");
  bounds->add_option("--feas-tol", c.feas_tol, "SDP feasibility tolerance");
  bounds->add_option("--gap-tol", c.gap_tol, "SDP duality-gap tolerance");
  bounds->add_option("--dump-matrix", c.dump_matrix,
                     "write the pencil / Gram matrices as labeled CSV");
  bounds->add_option("--dump-sdp", c.dump_sdp, "write the assembled sos SDP (sparse text)");
  add_out(bounds);

  CLI::App* choi = app.add_subcommand("choi-lam", "spectral floor experiment on the quartic");
  choi->add_option("--rmax", c.rmax, "largest level (default 6)")->check(CLI::Range(2, 12));
  choi->add_option("--sos-rmax", c.sos_rmax, "largest level solved as sos too (default 3)");
  add_threads(choi);
  add_out(choi);

  CLI::App* definetti = app.add_subcommand("definetti", "de Finetti experiments");
  definetti->require_subcommand(1);

  CLI::App* counter = definetti->add_subcommand(
      "counterexample", "marginals of the rho_r family stay far from separable");
  counter->add_option("--rmax", c.counter_rmax, "largest number of registers (default 5)")
      ->check(CLI::Range(2, 12));
  add_out(counter);

  CLI::App* banded = definetti->add_subcommand("banded", "banded bound check on random states");
  banded->add_option("--n", c.n, "variables (default 2)")->check(CLI::Range(2, 6));
  banded->add_option("--d", c.d, "marginal registers (default 2)")->check(CLI::PositiveNumber);
  banded->add_option("--r", c.r, "state registers")->required()->check(CLI::PositiveNumber);
  banded->add_option("--trials", c.trials, "instances (default 5)")->check(CLI::PositiveNumber);
  banded->add_option("--seed", c.seed, "RNG seed (default 0)");
  add_threads(banded);
  add_out(banded);

  CLI::App* decay = definetti->add_subcommand("decay", "marginal distance decay in r");
  decay->add_option("--kind", c.kind, "maxsym or banded (default banded)")
      ->check(CLI::IsMember({"maxsym", "banded"}));
  decay->add_option("--n", c.n, "variables (default 2)")->check(CLI::Range(2, 6));
  decay->add_option("--d", c.d, "marginal registers (default 2)")->check(CLI::PositiveNumber);
  decay->add_option("--r-list", c.r_list, "levels, e.g. 4,6,8,10")
      ->required()
      ->delimiter(',');
  decay->add_option("--trials", c.trials, "instances per level (default 5)")
      ->check(CLI::PositiveNumber);
  decay->add_option("--seed", c.seed, "RNG seed (default 0)");
  add_threads(decay);
  add_out(decay);

  CLI::App* constants = definetti->add_subcommand("constants", "alpha_d, phi_d grid, Reznick");
  constants->add_option("--d", c.const_dmax, "largest d (default 6)")
      ->check(CLI::Range(1, 10));
  add_out(constants);

  CLI::App* harmonic = app.add_subcommand("harmonic", "harmonic decomposition of a form");
  harmonic->add_option("--poly", c.poly_path, "polynomial file")->required();
  add_out(harmonic);

  CLI::App* kappa = app.add_subcommand("kappa", "condition number of the matrix of s^d");
  kappa->add_option("--n", c.n, "variables")->required()->check(CLI::Range(2, 12));
  kappa->add_option("--d", c.d, "half degree")->required()->check(CLI::Range(1, 12));
  kappa->add_option("--dump-matrix", c.dump_matrix, "write the matrix as labeled CSV");
  add_out(kappa);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n(run with --help for usage)\n";
    return 2;
  }

  try {
    if (bounds->parsed()) return run_bounds(c, out, err);
    if (choi->parsed()) return run_choi_lam(c, out, err);
    if (definetti->parsed()) {
      if (counter->parsed()) return run_counterexample(c, out, err);
      if (banded->parsed()) {
        if (c.r < c.d) {
          err << "usage error: --r must be at least --d\n";
          return 2;
        }
        return run_banded(c, out, err);
      }
      if (decay->parsed()) {
        for (int r : c.r_list)
          if (r < c.d) {
            err << "usage error: every --r-list entry must be at least --d\n";
            return 2;
          }
        return run_decay(c, out, err);
      }
      if (constants->parsed()) return run_constants(c, out, err);
    }
    if (harmonic->parsed()) return run_harmonic(c, out, err);
    if (kappa->parsed()) return run_kappa(c, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace sphier::cli
