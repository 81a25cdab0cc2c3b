// l2 — command-line driver for determinant, torsion, Betti, Whitehead,
// density and oracle computations over group rings.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "l2/io.hpp"

namespace {

using l2::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;
constexpr int kExitNumeric = 4;

struct CommonOptions {
  std::string input;
  std::string scheme = "folner";
  std::string levels = "50,100,200";
  double threshold = 1e-10;
  std::int64_t cap = 0;  // 0 = unset, resolve against env/default
  int jobs = 1;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_input = true) {
  auto* in = cmd->add_option("--input", opt.input, "input file (JSON)");
  if (needs_input) in->required();
  cmd->add_option("--scheme", opt.scheme, "compression scheme: folner|quotient")
      ->check(CLI::IsMember({"folner", "quotient"}));
  cmd->add_option("--levels", opt.levels, "comma-separated ascending levels");
  cmd->add_option("--threshold", opt.threshold,
                  "kernel cut theta; effective cut is theta*max(1,lambda_max)");
  cmd->add_option("--cap", opt.cap, "dense-solve dimension cap (default 5000)");
  cmd->add_option("--jobs", opt.jobs, "worker count across (degree, level) tasks");
  cmd->add_option("--format", opt.format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opt.out, "output path (stdout when omitted)");
}

std::int64_t resolve_cap(std::int64_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("L2LAB_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw l2::InputError("L2LAB_CAP must be a positive integer");
  }
  return 5000;
}

l2::Schedule make_schedule(const CommonOptions& opt) {
  l2::Schedule s;
  s.scheme = opt.scheme == "quotient" ? l2::CompressionScheme::Quotient
                                      : l2::CompressionScheme::Folner;
  s.levels = l2::parse_levels(opt.levels);
  s.kernel_theta = opt.threshold;
  s.dimension_cap = resolve_cap(opt.cap);
  s.validate();
  return s;
}

json config_echo(const CommonOptions& opt, const l2::Schedule& sched) {
  json j = l2::dump_schedule(sched);
  j["input"] = opt.input;
  j["jobs"] = opt.jobs;
  j["format"] = opt.format;
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw l2::InputError("cannot open input file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw l2::InputError("JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    l2::write_file_atomic(out_path, text);
}

void emit_json(const json& j, const std::string& out_path) {
  emit(j.dump(2) + "\n", out_path);
}

int run_det(const CommonOptions& opt, bool direct, const std::string& dump_matrix) {
  l2::Schedule sched = make_schedule(opt);
  l2::RingMatrix a = l2::parse_ring_matrix(load_json_file(opt.input));
  if (!dump_matrix.empty()) {
    l2::Compression c =
        sched.scheme == l2::CompressionScheme::Folner
            ? l2::compress_folner(a, l2::folner_set(a.spec(), sched.top_level()),
                                  false)
            : l2::compress_quotient(a, l2::quotient(a.spec(), sched.top_level()),
                                    false);
    std::ostringstream os;
    os << c.matrix.format(Eigen::IOFormat(Eigen::FullPrecision, 0, " ", "\n"));
    os << "\n";
    l2::write_file_atomic(dump_matrix, os.str());
  }
  l2::DetEstimate est = l2::fk_determinant(a, sched, direct, opt.jobs);
  json cfg = config_echo(opt, sched);
  cfg["direct"] = direct;
  if (opt.format == "csv")
    emit(l2::convergence_csv(est.levels), opt.out);
  else
    emit_json(l2::det_report(est, cfg, a.spec()), opt.out);
  return kExitOk;
}

int run_torsion(const CommonOptions& opt) {
  l2::Schedule sched = make_schedule(opt);
  l2::CochainComplex c = l2::load_complex(load_json_file(opt.input));
  l2::TorsionReport r = l2::l2_torsion(c, sched, opt.jobs);
  if (opt.format == "csv") {
    std::ostringstream os;
    for (const auto& deg : r.degrees) {
      std::string table = l2::convergence_csv(deg.levels, deg.degree);
      if (deg.degree > 0) {
        // drop the repeated header
        table.erase(0, table.find('\n') + 1);
      }
      os << table;
    }
    emit(os.str(), opt.out);
  } else {
    emit_json(l2::torsion_report(r, config_echo(opt, sched), c.spec), opt.out);
  }
  return kExitOk;
}

int run_betti(const CommonOptions& opt) {
  l2::Schedule sched = make_schedule(opt);
  l2::CochainComplex c = l2::load_complex(load_json_file(opt.input));
  std::vector<double> betti = l2::l2_betti(c, sched, opt.jobs);
  emit_json(l2::betti_report(betti, l2::euler_characteristic(c),
                             config_echo(opt, sched), c.spec),
            opt.out);
  return kExitOk;
}

int run_whitehead(const CommonOptions& opt) {
  l2::Schedule sched = make_schedule(opt);
  l2::UnitProduct p = l2::parse_unit_product(load_json_file(opt.input));
  l2::DetEstimate est = l2::whitehead_det(p, sched, opt.jobs);
  json cfg = config_echo(opt, sched);
  json report = l2::det_report(est, cfg, p.spec);
  report["command"] = "whitehead";
  report["matrix_size"] = p.size;
  report["factor_count"] = p.factors.size();
  if (opt.format == "csv")
    emit(l2::convergence_csv(est.levels), opt.out);
  else
    emit_json(report, opt.out);
  return kExitOk;
}

int run_density(const CommonOptions& opt, int single_level) {
  CommonOptions local = opt;
  if (single_level > 0) local.levels = std::to_string(single_level);
  l2::Schedule sched = make_schedule(local);
  l2::RingMatrix a = l2::parse_ring_matrix(load_json_file(opt.input));
  l2::Compression c =
      sched.scheme == l2::CompressionScheme::Folner
          ? l2::compress_folner(a, l2::folner_set(a.spec(), sched.top_level()))
          : l2::compress_quotient(a, l2::quotient(a.spec(), sched.top_level()));
  l2::SpectralDensity s = l2::eigenvalues(c, sched.dimension_cap);
  emit(l2::density_csv(s), opt.out);
  return kExitOk;
}

int run_validate(const CommonOptions& opt) {
  json j = load_json_file(opt.input);
  l2::CochainComplex c;
  c.spec = l2::parse_group_spec(j.at("group"));
  c.ranks = j.at("ranks").get<std::vector<int>>();
  for (const auto& d : j.at("differentials"))
    c.differentials.push_back(l2::parse_ring_matrix(d, c.spec));
  if (auto v = l2::validate(c)) {
    std::cerr << "invalid complex: " << v->message << " (degree " << v->degree
              << ")\n";
    return kExitInput;
  }
  std::cout << "ok\n";
  return kExitOk;
}

int run_oracle_mahler(const std::string& poly, const std::string& input,
                      int grid, const std::string& out) {
  json terms;
  if (!poly.empty()) {
    try {
      terms = json::parse("[" + poly + "]");
    } catch (const json::exception& e) {
      throw l2::InputError(std::string("cannot parse --poly: ") + e.what());
    }
  } else if (!input.empty()) {
    terms = load_json_file(input);
  } else {
    throw l2::InputError("oracle mahler: --poly or --input required");
  }
  int vars = 1;
  if (terms.is_array() && !terms.empty() && terms[0].is_array() &&
      terms[0][0].is_array())
    vars = static_cast<int>(terms[0][0].size());
  l2::RingElement e =
      l2::parse_ring_element(terms, l2::GroupSpec::free_abelian(vars));
  l2::MahlerResult r = l2::mahler_measure(l2::from_ring_element(e), grid);
  if (out.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", r.value);
    std::cout << buf << "\n";
  } else {
    json j;
    j["command"] = "oracle";
    j["oracle"] = "mahler";
    j["grid"] = grid;
    j["value"] = l2::report_number(r.value);
    j["used_jensen"] = r.used_jensen;
    j["low_precision"] = r.low_precision;
    emit_json(j, out);
  }
  return kExitOk;
}

int run_oracle_finite(const std::string& input, const std::string& out) {
  l2::RingMatrix a = l2::parse_ring_matrix(load_json_file(input));
  l2::FiniteGroupDet d = l2::finite_group_det(a);
  if (out.empty()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", d.value);
    std::cout << buf << "\n";
  } else {
    json j;
    j["command"] = "oracle";
    j["oracle"] = "finite";
    j["value"] = l2::report_number(d.value);
    j["positive_part"] = l2::report_number(d.positive_part);
    j["kernel_dim_tau"] = l2::report_number(d.kernel_dim_tau);
    j["singular"] = d.singular;
    emit_json(j, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L2 invariants of finite complexes over group rings"};
  app.require_subcommand(1);

  CommonOptions det_opt, torsion_opt, betti_opt, whitehead_opt, density_opt,
      validate_opt;
  bool det_direct = false;
  std::string det_dump_matrix;
  int density_level = 0;
  std::string mahler_poly, mahler_input, oracle_out;
  int mahler_grid = 4096;
  std::string finite_input;

  auto* det = app.add_subcommand("det", "Fuglede-Kadison determinant estimate");
  add_common(det, det_opt);
  det->add_flag("--direct", det_direct,
                "evaluate A itself (requires A = A*) instead of (A*A)^{1/2}");
  det->add_option("--dump-matrix", det_dump_matrix,
                  "write the top-level compression as dense text");

  auto* torsion = app.add_subcommand("torsion", "L2 torsion of a complex");
  add_common(torsion, torsion_opt);

  auto* betti = app.add_subcommand("betti", "L2 Betti numbers of a complex");
  add_common(betti, betti_opt);

  auto* whitehead =
      app.add_subcommand("whitehead", "determinant of an explicit unit product");
  add_common(whitehead, whitehead_opt);

  auto* density = app.add_subcommand("density", "spectral density CSV dump");
  add_common(density, density_opt);
  density->add_option("--level", density_level,
                      "single level (alias for --levels with one entry)");

  auto* validate_cmd = app.add_subcommand("validate", "validate a complex file");
  validate_cmd->add_option("--input", validate_opt.input, "complex file (JSON)")
      ->required();

  auto* oracle = app.add_subcommand("oracle", "independent ground-truth values");
  oracle->require_subcommand(1);
  auto* mahler = oracle->add_subcommand("mahler", "torus-average Mahler measure");
  mahler->add_option("--poly", mahler_poly,
                     "Laurent polynomial terms: [coords,num,den],...");
  mahler->add_option("--input", mahler_input, "ring element file (JSON)");
  mahler->add_option("--grid", mahler_grid, "grid points per dimension");
  mahler->add_option("--out", oracle_out, "output path (stdout when omitted)");
  auto* finite =
      oracle->add_subcommand("finite", "regular-representation determinant");
  finite->add_option("--input", finite_input, "matrix file (JSON)")->required();
  finite->add_option("--out", oracle_out, "output path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (det->parsed()) return run_det(det_opt, det_direct, det_dump_matrix);
    if (torsion->parsed()) return run_torsion(torsion_opt);
    if (betti->parsed()) return run_betti(betti_opt);
    if (whitehead->parsed()) return run_whitehead(whitehead_opt);
    if (density->parsed()) return run_density(density_opt, density_level);
    if (validate_cmd->parsed()) return run_validate(validate_opt);
    if (oracle->parsed()) {
      if (mahler->parsed())
        return run_oracle_mahler(mahler_poly, mahler_input, mahler_grid, oracle_out);
      if (finite->parsed()) return run_oracle_finite(finite_input, oracle_out);
    }
  } catch (const l2::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const l2::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const l2::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
