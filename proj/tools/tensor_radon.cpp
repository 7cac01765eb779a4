// tensor_radon: batch driver for the generalized Radon transform library.
// Subcommands build phantoms, run forward transforms, invert, decompose and
// execute the checkers; artifacts are TFLD/SINO files plus JSON-shaped
// reports and a summary.csv per run.
//
// Exit codes: 0 success, 1 checker failure, 2 usage error, 3 I/O error.

#include "grt/analysis.hpp"
#include "grt/decomp.hpp"
#include "grt/invert.hpp"
#include "grt/io.hpp"
#include "grt/radon.hpp"
#include "grt/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CheckerFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridOpts {
  int n = 2;
  int N = 64;
  double L = 3.0;

  grt::Grid make() const {
    grt::Grid g{n, L, N};
    g.validate();
    return g;
  }
};

struct DirOpts {
  int count = 180;
  double p_max = 0;   // 0 -> L*sqrt(n) + 2h
  double hp = 0;      // 0 -> grid spacing h
  int u_count = 0;    // 0 -> library default

  grt::DirectionGrid make(const grt::Grid& g) const {
    double spacing = hp > 0 ? hp : g.h();
    double pm = p_max > 0 ? p_max : g.L * std::sqrt(static_cast<double>(g.n)) + 2 * g.h();
    return grt::make_direction_grid(g.n, count, pm, spacing, u_count);
  }
};

void add_grid_opts(CLI::App* cmd, GridOpts& g) {
  cmd->add_option("--grid.n", g.n, "space dimension")->check(CLI::Range(2, 3));
  cmd->add_option("--grid.N", g.N, "samples per axis (even)");
  cmd->add_option("--grid.L", g.L, "half-width of the domain cube");
}

void add_dir_opts(CLI::App* cmd, DirOpts& d) {
  cmd->add_option("--dirs.count", d.count, "number of directions");
  cmd->add_option("--dirs.p-max", d.p_max, "max hyperplane offset (0 = auto)");
  cmd->add_option("--dirs.hp", d.hp, "offset spacing (0 = grid spacing)");
  cmd->add_option("--dirs.u-count", d.u_count, "tangent directions per omega (pair mode)");
}

grt::Signature parse_signature(const std::string& s) {
  auto fail = [&] { throw CLI::ValidationError("--sig", "expected pair:l1,l2 or frame:d1,...,dn, got " + s); };
  auto colon = s.find(':');
  if (colon == std::string::npos) fail();
  std::string kind = s.substr(0, colon);
  std::vector<int> nums;
  std::istringstream is(s.substr(colon + 1));
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      nums.push_back(std::stoi(item));
    } catch (const std::exception&) {
      fail();
    }
  }
  if (kind == "pair") {
    if (nums.size() != 2) fail();
    return grt::Signature::pair_degrees(nums[0], nums[1]);
  }
  if (kind == "frame") {
    if (nums.empty()) fail();
    return grt::Signature::frame_degrees(nums);
  }
  fail();
  return {};
}

std::string signature_slug(const grt::Signature& sig) {
  std::ostringstream os;
  if (sig.uses_u_axis()) {
    os << "pair_" << sig.l1 << "_" << sig.l2;
  } else {
    os << "frame";
    for (int d : sig.degrees) os << "_" << d;
  }
  return os.str();
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw grt::IoError("cannot create output directory: " + out);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw grt::IoError("cannot open for writing: " + path.string());
  os << text;
  if (!os) throw grt::IoError("write failure: " + path.string());
}

void write_report(const fs::path& dir, const std::string& name, const json& j) {
  write_text(dir / (name + ".json"), j.dump(2) + "\n");
}

void write_summary_csv(const fs::path& dir, const std::vector<std::array<std::string, 4>>& rows) {
  std::ostringstream os;
  os << "check,value,threshold,pass\n";
  for (const auto& r : rows) os << r[0] << "," << r[1] << "," << r[2] << "," << r[3] << "\n";
  write_text(dir / "summary.csv", os.str());
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double rel_l2_err(const grt::TensorField& got, const grt::TensorField& ref) {
  grt::TensorField diff = got;
  grt::axpy(-1.0, ref, diff);
  double den = grt::l2_norm(ref);
  return den > 0 ? grt::l2_norm(diff) / den : grt::l2_norm(diff);
}

// ---- subcommand bodies -----------------------------------------------------

int run_phantom(const GridOpts& go, int m, std::uint64_t seed, int terms, bool zero_mean,
                bool zero, const std::string& out) {
  grt::Grid g = go.make();
  grt::TensorField f =
      zero ? grt::TensorField(g, m)
           : grt::make_phantom(g, grt::random_phantom(g.n, m, g.L, seed, terms, zero_mean));
  grt::save_tfld(out, f);
  std::cout << "wrote " << out << " (n=" << g.n << " m=" << m << " N=" << g.N << ")\n";
  return 0;
}

int run_forward(const std::string& in, const DirOpts& dopt, const std::string& sig_arg,
                const std::string& method, const std::string& out) {
  grt::TensorField f = grt::load_tfld(in);
  grt::DirectionGrid dg = dopt.make(f.grid);
  std::vector<grt::Signature> sigs;
  if (sig_arg == "all") {
    for (const auto& deg : grt::degree_signatures(f.grid.n, f.m))
      sigs.push_back(grt::Signature::frame_degrees(deg));
  } else {
    sigs.push_back(parse_signature(sig_arg));
  }
  fs::path dir = ensure_out_dir(out);
  for (const auto& sig : sigs) {
    if (sig.order() != f.m)
      throw CLI::ValidationError("--sig", "signature order does not match field order");
    grt::Sinogram s = method == "quadrature" ? grt::grt(f, sig, dg) : grt::grt_fourier(f, sig, dg);
    fs::path path = dir / ("g_" + signature_slug(sig) + ".sino");
    grt::save_sino(path.string(), s);
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int run_invert(const std::vector<std::string>& inputs, const GridOpts& go, bool check_range,
               double range_tol, const std::string& reference, const std::string& out) {
  grt::Grid g = go.make();
  grt::GrtDataset ds;
  bool first = true;
  for (const auto& path : inputs) {
    grt::Sinogram s = grt::load_sino(path);
    if (s.sig.uses_u_axis())
      throw CLI::ValidationError("inputs", "invert needs frame-mode sinograms: " + path);
    if (first) {
      ds.n = s.dgrid.n;
      ds.m = s.sig.order();
      ds.dgrid = s.dgrid;
      first = false;
    } else if (s.sig.order() != ds.m || s.dgrid.n != ds.n) {
      throw CLI::ValidationError("inputs", "inconsistent sinogram set: " + path);
    }
    ds.data.emplace(s.sig.degrees, std::move(s));
  }
  if (first) throw CLI::ValidationError("inputs", "no input sinograms given");
  if (ds.n != g.n) throw CLI::ValidationError("--grid.n", "grid dimension does not match data");

  grt::InversionOptions opt;
  opt.check_range = check_range;
  opt.range_tol = range_tol;
  grt::InversionReport rep;
  grt::TensorField recon = grt::invert_full(ds, g, opt, &rep);

  fs::path dir = ensure_out_dir(out);
  grt::save_tfld((dir / "recon.tfld").string(), recon);
  json j;
  j["grid"] = {{"n", g.n}, {"N", g.N}, {"L", g.L}};
  j["m"] = ds.m;
  for (const auto& st : rep.stages) {
    j["stages"].push_back({{"gridding_imag_residue", st.gridding_imag_residue},
                           {"solve_residual", st.solve.worst_residual}});
  }
  double rel = -1;
  if (!reference.empty()) {
    rel = rel_l2_err(recon, grt::load_tfld(reference));
    j["rel_error_vs_reference"] = rel;
  }
  write_report(dir, "invert_report", j);
  std::cout << "wrote " << (dir / "recon.tfld").string();
  if (rel >= 0) std::cout << "  rel_error=" << rel;
  std::cout << "\n";
  return 0;
}

int run_decompose(const std::string& in, const std::string& out) {
  grt::TensorField f = grt::load_tfld(in);
  grt::DecompositionResult dr = grt::decompose(f);
  fs::path dir = ensure_out_dir(out);
  json j;
  j["m"] = f.m;
  j["residual"] = dr.residual;
  for (int i = 0; i <= f.m; ++i) {
    fs::path path = dir / ("v" + std::to_string(i) + ".tfld");
    grt::save_tfld(path.string(), dr.v[static_cast<std::size_t>(i)]);
    json stage = {{"order", f.m - i}, {"file", path.filename().string()}};
    if (i < f.m) stage["solenoidality"] = dr.solenoidality[static_cast<std::size_t>(i)];
    j["components"].push_back(stage);
  }
  write_report(dir, "decompose_report", j);
  std::cout << "residual=" << dr.residual << "\n";
  return 0;
}

int run_slice_check(const std::string& in, const DirOpts& dopt, const std::string& sig_arg,
                    double tol, const std::string& out) {
  grt::TensorField f = grt::load_tfld(in);
  grt::DirectionGrid dg = dopt.make(f.grid);
  grt::Signature sig = sig_arg == "all" ? grt::Signature::pair_degrees(0, f.m)
                                        : parse_signature(sig_arg);
  if (sig.order() != f.m)
    throw CLI::ValidationError("--sig", "signature order does not match field order");

  grt::Sinogram data = grt::grt(f, sig, dg);
  grt::FourierSampler sampler(f, f.grid.n == 2 ? 4 : 2);
  const std::size_t M = dg.p.size();
  const double half_nyq = std::numbers::pi / (2.0 * dg.hp);
  const double slice = std::pow(2.0 * std::numbers::pi, (f.grid.n - 1) / 2.0);
  double num2 = 0, den2 = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    for (int ui = 0; ui < data.u_extent(); ++ui) {
      auto gh = grt::p_to_sigma(std::span<const double>(data.row(j, ui), M), dg.hp);
      grt::SymTensor w = grt::signature_tensor(sig, dg, j, ui);
      for (std::size_t l = 0; l < M; ++l) {
        double sigma = grt::sigma_of_slot(l, M, dg.hp);
        if (std::abs(sigma) > std::min(half_nyq, 0.999 * sampler.nyquist())) continue;
        std::complex<double> ref = slice * grt::pair(sampler.sample(dg.omegas[j], sigma), w);
        num2 += std::norm(gh[l] - ref);
        den2 += std::norm(ref);
      }
    }
  }
  double rel = den2 > 0 ? std::sqrt(num2 / den2) : std::sqrt(num2);
  bool pass = rel <= tol;
  fs::path dir = ensure_out_dir(out);
  json j = {{"signature", signature_slug(sig)}, {"rel_error", rel}, {"tol", tol}, {"pass", pass}};
  write_report(dir, "slice_check_report", j);
  write_summary_csv(dir, {{"slice-check", num(rel), num(tol), pass ? "1" : "0"}});
  std::cout << "slice-check rel_error=" << rel << (pass ? " PASS" : " FAIL") << "\n";
  if (!pass) throw CheckerFailure("slice-check failed");
  return 0;
}

int run_reshetnyak(const std::string& in, int l1, int l2, double s, double t, const DirOpts& dopt,
                   double tol, const std::string& out) {
  grt::TensorField f = grt::load_tfld(in);
  if (l1 + l2 != f.m) throw CLI::ValidationError("--l1/--l2", "degrees must sum to field order");
  grt::DirectionGrid dg = dopt.make(f.grid);
  grt::ReshetnyakResult res = grt::reshetnyak_check(f, l1, l2, {s, t}, dg);
  bool pass = res.rel_gap <= tol;
  fs::path dir = ensure_out_dir(out);
  json j = {{"l1", l1}, {"l2", l2}, {"s", s}, {"t", t},
            {"lhs", res.lhs}, {"rhs", res.rhs}, {"rel_gap", res.rel_gap},
            {"tol", tol}, {"pass", pass}};
  write_report(dir, "reshetnyak_report", j);
  write_summary_csv(dir, {{"reshetnyak", num(res.rel_gap), num(tol), pass ? "1" : "0"}});
  std::cout << "reshetnyak lhs=" << res.lhs << " rhs=" << res.rhs << " rel_gap=" << res.rel_gap
            << (pass ? " PASS" : " FAIL") << "\n";
  if (!pass) throw CheckerFailure("reshetnyak check failed");
  return 0;
}

int run_range_check(const std::string& in, int k_max, double parity_tol, double moment_tol,
                    const std::string& out) {
  grt::Sinogram g = grt::load_sino(in);
  grt::RangeReport rep = grt::range_check(g, k_max, parity_tol, moment_tol);
  fs::path dir = ensure_out_dir(out);
  json j = {{"parity_defect", rep.parity_defect}, {"parity_tol", rep.parity_tol},
            {"moment_tol", rep.moment_tol}, {"pass", rep.verdict}};
  for (const auto& fit : rep.moment_fits)
    j["moments"].push_back({{"k", fit.k}, {"rel_residual", fit.rel_residual}});
  write_report(dir, "range_check_report", j);
  write_summary_csv(dir, {{"range-check", num(rep.parity_defect), num(rep.parity_tol),
                           rep.verdict ? "1" : "0"}});
  std::cout << "range-check parity_defect=" << rep.parity_defect
            << (rep.verdict ? " PASS" : " FAIL") << "\n";
  if (!rep.verdict) throw CheckerFailure("range check failed");
  return 0;
}

int run_ucp_odd(const GridOpts& go, int m, int i, double a, const DirOpts& dopt, double ratio_tol,
                const std::string& out) {
  GridOpts go3 = go;
  go3.n = 3;
  grt::Grid g = go3.make();
  grt::DirectionGrid dg = dopt.make(g);
  grt::UcpReport rep = grt::ucp_counterexample(m, i, a, g, dg, ratio_tol);
  fs::path dir = ensure_out_dir(out);
  json j = {{"region", rep.region}, {"interior_norm", rep.interior_norm},
            {"exterior_norm", rep.exterior_norm},
            {"data_norm_on_U_planes", rep.data_norm_on_U_planes},
            {"ratio_tol", ratio_tol}, {"pass", rep.verdict}};
  write_report(dir, "ucp_odd_report", j);
  double ratio = rep.exterior_norm > 0 ? rep.interior_norm / rep.exterior_norm : 0;
  write_summary_csv(dir, {{"ucp-odd", num(ratio), num(ratio_tol), rep.verdict ? "1" : "0"}});
  std::cout << "ucp-odd interior=" << rep.interior_norm << " exterior=" << rep.exterior_norm
            << " data_on_U=" << rep.data_norm_on_U_planes << (rep.verdict ? " PASS" : " FAIL")
            << "\n";
  if (!rep.verdict) throw CheckerFailure("ucp-odd counterexample check failed");
  return 0;
}

int run_ucp_even(const GridOpts& go, int m, int i, std::uint64_t seed, const DirOpts& dopt,
                 double margin_tol, const std::string& out) {
  GridOpts go2 = go;
  go2.n = 2;
  grt::Grid g = go2.make();
  if (m != 0 && m != 1)
    throw CLI::ValidationError("--m", "built-in shell phantoms cover m = 0 and m = 1");
  grt::TensorField f = m == 0 ? grt::shell_scalar_field(g, seed) : grt::shell_solenoidal_field(g, seed);
  grt::DirectionGrid dg = dopt.make(g);
  grt::UcpReport rep = grt::ucp_uniqueness_experiment(m, i, f, dg, margin_tol);
  fs::path dir = ensure_out_dir(out);
  json j = {{"region", rep.region}, {"margin", rep.margin}, {"margin_tol", margin_tol},
            {"pass", rep.verdict}};
  write_report(dir, "ucp_even_report", j);
  write_summary_csv(dir, {{"ucp-even", num(rep.margin), num(margin_tol), rep.verdict ? "1" : "0"}});
  std::cout << "ucp-even margin=" << rep.margin << (rep.verdict ? " PASS" : " FAIL") << "\n";
  if (!rep.verdict) throw CheckerFailure("ucp-even uniqueness probe failed");
  return 0;
}

int run_selftest_cmd(const std::string& out) {
  grt::SelftestResult res = grt::run_selftest(true);
  fs::path dir = ensure_out_dir(out);
  json j;
  j["total_seconds"] = res.total_seconds;
  j["all_pass"] = res.all_pass;
  std::vector<std::array<std::string, 4>> rows;
  std::cout << "\n  result   value        threshold    time     check\n";
  for (const auto& c : res.criteria) {
    j["criteria"].push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                             {"pass", c.pass}, {"seconds", c.seconds}, {"detail", c.detail}});
    rows.push_back({c.name, num(c.value), num(c.threshold), c.pass ? "1" : "0"});
    char line[160];
    std::snprintf(line, sizeof(line), "  %-8s %-12.4g %-12.4g %6.1fs  %s\n",
                  c.pass ? "PASS" : "FAIL", c.value, c.threshold, c.seconds, c.name.c_str());
    std::cout << line;
  }
  std::cout << "\n  total " << res.total_seconds << " s, "
            << (res.all_pass ? "all criteria pass" : "FAILURES present") << "\n";
  write_report(dir, "selftest_report", j);
  write_summary_csv(dir, rows);
  if (!res.all_pass) throw CheckerFailure("selftest failed");
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Radon transform toolkit for symmetric tensor fields"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file (INI sections map to dotted flags)");

  // phantom
  auto* phantom = app.add_subcommand("phantom", "generate a seeded phantom field (TFLD)");
  GridOpts ph_grid;
  int ph_m = 0, ph_terms = 2;
  std::uint64_t ph_seed = 1;
  bool ph_zero_mean = false, ph_zero = false;
  std::string ph_out = "phantom.tfld";
  add_grid_opts(phantom, ph_grid);
  phantom->add_option("--field.m", ph_m, "tensor order")->check(CLI::Range(0, 4));
  phantom->add_option("--seed", ph_seed, "RNG seed");
  phantom->add_option("--terms", ph_terms, "Gaussian bumps per component");
  phantom->add_flag("--zero-mean", ph_zero_mean, "pair bumps so the mean vanishes");
  phantom->add_flag("--zero", ph_zero, "all-zero field");
  phantom->add_option("-o,--out", ph_out, "output TFLD path");

  // forward
  auto* forward = app.add_subcommand("forward", "forward transform of a TFLD to SINO files");
  DirOpts fw_dirs;
  std::string fw_in, fw_sig = "all", fw_method = "quadrature", fw_out = ".";
  forward->add_option("-i,--input", fw_in, "input TFLD")->required();
  add_dir_opts(forward, fw_dirs);
  forward->add_option("--sig", fw_sig, "signature (pair:l1,l2 | frame:d,... | all)");
  forward->add_option("--method", fw_method, "quadrature | fourier")
      ->check(CLI::IsMember({"quadrature", "fourier"}));
  forward->add_option("-o,--out", fw_out, "output directory");

  // invert
  auto* invert = app.add_subcommand("invert", "full inversion from a complete frame-mode dataset");
  GridOpts iv_grid;
  std::vector<std::string> iv_inputs;
  bool iv_check_range = false;
  double iv_range_tol = 1e-3;
  std::string iv_reference, iv_out = ".";
  invert->add_option("inputs", iv_inputs, "frame-mode SINO files (complete signature set)")
      ->required();
  add_grid_opts(invert, iv_grid);
  invert->add_flag("--check-range", iv_check_range, "gate on per-frequency solve residuals");
  invert->add_option("--range-tol", iv_range_tol, "residual gate");
  invert->add_option("--reference", iv_reference, "TFLD to compare against");
  invert->add_option("-o,--out", iv_out, "output directory");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "solenoidal-potential decomposition");
  std::string dc_in, dc_out = ".";
  decompose->add_option("-i,--input", dc_in, "input TFLD")->required();
  decompose->add_option("-o,--out", dc_out, "output directory");

  // slice-check
  auto* slice = app.add_subcommand("slice-check", "Fourier slice identity check");
  DirOpts sl_dirs;
  std::string sl_in, sl_sig = "all", sl_out = ".";
  double sl_tol = 1e-3;
  slice->add_option("-i,--input", sl_in, "input TFLD")->required();
  add_dir_opts(slice, sl_dirs);
  slice->add_option("--sig", sl_sig, "signature (default pair:0,m)");
  slice->add_option("--tol", sl_tol, "relative tolerance");
  slice->add_option("-o,--out", sl_out, "output directory");

  // reshetnyak
  auto* resh = app.add_subcommand("reshetnyak", "data/field norm isometry check");
  DirOpts rs_dirs;
  std::string rs_in, rs_out = ".";
  int rs_l1 = 0, rs_l2 = 0;
  double rs_s = 0, rs_t = 0, rs_tol = 3e-2;
  resh->add_option("-i,--input", rs_in, "input TFLD")->required();
  add_dir_opts(resh, rs_dirs);
  resh->add_option("--l1", rs_l1, "normal degree");
  resh->add_option("--l2", rs_l2, "tangent degree");
  resh->add_option("--s", rs_s, "smoothness index");
  resh->add_option("--t", rs_t, "weight index (> -n/2)");
  resh->add_option("--tol", rs_tol, "relative gap tolerance");
  resh->add_option("-o,--out", rs_out, "output directory");

  // range-check
  auto* range = app.add_subcommand("range-check", "parity + moment range conditions");
  std::string rc_in, rc_out = ".";
  int rc_kmax = 4;
  double rc_parity = 1e-10, rc_moment = 1e-3;
  range->add_option("-i,--input", rc_in, "input pair-mode SINO")->required();
  range->add_option("--k-max", rc_kmax, "highest moment order")->check(CLI::Range(0, 6));
  range->add_option("--parity-tol", rc_parity, "parity defect tolerance");
  range->add_option("--moment-tol", rc_moment, "moment residual tolerance");
  range->add_option("-o,--out", rc_out, "output directory");

  // ucp-odd
  auto* uodd = app.add_subcommand("ucp-odd", "odd-dimension non-uniqueness counterexample");
  GridOpts uo_grid;
  uo_grid.n = 3;
  DirOpts uo_dirs;
  uo_dirs.count = 500;
  int uo_m = 0, uo_i = 0;
  double uo_a = 2.0, uo_ratio = 5e-2;
  std::string uo_out = ".";
  add_grid_opts(uodd, uo_grid);
  add_dir_opts(uodd, uo_dirs);
  uodd->add_option("--m", uo_m, "tensor order");
  uodd->add_option("--i", uo_i, "normal degree of the recovered component");
  uodd->add_option("--a", uo_a, "outer shell radius (> 1)")->check(CLI::PositiveNumber);
  uodd->add_option("--ratio-tol", uo_ratio, "interior/exterior ratio tolerance");
  uodd->add_option("-o,--out", uo_out, "output directory");

  // ucp-even
  auto* ueven = app.add_subcommand("ucp-even", "even-dimension uniqueness probe");
  GridOpts ue_grid;
  DirOpts ue_dirs;
  int ue_m = 0, ue_i = 0;
  std::uint64_t ue_seed = 1;
  double ue_margin = 1e-3;
  std::string ue_out = ".";
  add_grid_opts(ueven, ue_grid);
  add_dir_opts(ueven, ue_dirs);
  ueven->add_option("--m", ue_m, "tensor order (0 or 1)");
  ueven->add_option("--i", ue_i, "normal degree probed");
  ueven->add_option("--seed", ue_seed, "shell phantom seed");
  ueven->add_option("--margin-tol", ue_margin, "required data margin on |p| < 1");
  ueven->add_option("-o,--out", ue_out, "output directory");

  // selftest
  auto* self = app.add_subcommand("selftest", "run the full acceptance suite");
  std::string st_out = ".";
  self->add_option("-o,--out", st_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (phantom->parsed())
      return run_phantom(ph_grid, ph_m, ph_seed, ph_terms, ph_zero_mean, ph_zero, ph_out);
    if (forward->parsed()) return run_forward(fw_in, fw_dirs, fw_sig, fw_method, fw_out);
    if (invert->parsed())
      return run_invert(iv_inputs, iv_grid, iv_check_range, iv_range_tol, iv_reference, iv_out);
    if (decompose->parsed()) return run_decompose(dc_in, dc_out);
    if (slice->parsed()) return run_slice_check(sl_in, sl_dirs, sl_sig, sl_tol, sl_out);
    if (resh->parsed())
      return run_reshetnyak(rs_in, rs_l1, rs_l2, rs_s, rs_t, rs_dirs, rs_tol, rs_out);
    if (range->parsed()) return run_range_check(rc_in, rc_kmax, rc_parity, rc_moment, rc_out);
    if (uodd->parsed()) return run_ucp_odd(uo_grid, uo_m, uo_i, uo_a, uo_dirs, uo_ratio, uo_out);
    if (ueven->parsed())
      return run_ucp_even(ue_grid, ue_m, ue_i, ue_seed, ue_dirs, ue_margin, ue_out);
    if (self->parsed()) return run_selftest_cmd(st_out);
  } catch (const CheckerFailure& e) {
    std::cerr << "FAIL: " << e.what() << "\n";
    return 1;
  } catch (const grt::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
