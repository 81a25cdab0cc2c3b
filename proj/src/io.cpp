#include "l2/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace l2 {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json report_number(double x) {
  if (std::isnan(x)) return nullptr;
  return round12(x);
}

namespace {

std::int64_t to_int64_checked(const Rational& part, const char* what) {
  if (part < std::numeric_limits<std::int64_t>::min() ||
      part > std::numeric_limits<std::int64_t>::max())
    throw InputError(std::string("serialization: ") + what + " exceeds 64-bit range");
  return part.convert_to<std::int64_t>();
}

}  // namespace

json dump_group_spec(const GroupSpec& spec) {
  json j;
  switch (spec.kind()) {
    case GroupSpec::Kind::FreeAbelian:
      j["kind"] = "free_abelian";
      j["d"] = spec.dimension();
      break;
    case GroupSpec::Kind::FiniteCyclic:
      j["kind"] = "finite_cyclic";
      j["n"] = spec.modulus();
      break;
    case GroupSpec::Kind::FiniteAbelian:
      j["kind"] = "finite_abelian";
      j["factors"] = spec.abelian_factors();
      break;
    case GroupSpec::Kind::Heisenberg:
      j["kind"] = "heisenberg";
      break;
    case GroupSpec::Kind::HeisenbergMod:
      j["kind"] = "heisenberg_mod";
      j["m"] = spec.modulus();
      break;
    case GroupSpec::Kind::Product: {
      j["kind"] = "product";
      json fs = json::array();
      for (const auto& f : spec.factors()) fs.push_back(dump_group_spec(f));
      j["factors"] = fs;
      break;
    }
  }
  return j;
}

GroupSpec parse_group_spec(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("group spec: object with \"kind\" expected");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "free_abelian") return GroupSpec::free_abelian(j.at("d").get<int>());
  if (kind == "finite_cyclic")
    return GroupSpec::finite_cyclic(j.at("n").get<std::int64_t>());
  if (kind == "finite_abelian")
    return GroupSpec::finite_abelian(
        j.at("factors").get<std::vector<std::int64_t>>());
  if (kind == "heisenberg") return GroupSpec::heisenberg();
  if (kind == "heisenberg_mod")
    return GroupSpec::heisenberg_mod(j.at("m").get<std::int64_t>());
  if (kind == "product") {
    std::vector<GroupSpec> fs;
    for (const auto& f : j.at("factors")) fs.push_back(parse_group_spec(f));
    return GroupSpec::product(std::move(fs));
  }
  throw InputError("group spec: unknown kind \"" + kind + "\"");
}

json dump_group_element(const GroupElement& g) { return json(g); }

GroupElement parse_group_element(const json& j) {
  if (!j.is_array()) throw InputError("group element: integer array expected");
  return j.get<GroupElement>();
}

json dump_ring_element(const RingElement& e) {
  json terms = json::array();
  for (const auto& [g, c] : e.support()) {
    terms.push_back(json::array({dump_group_element(g),
                                 to_int64_checked(numerator(c), "numerator"),
                                 to_int64_checked(denominator(c), "denominator")}));
  }
  return terms;
}

RingElement parse_ring_element(const json& j, const GroupSpec& spec) {
  if (!j.is_array()) throw InputError("ring element: array of terms expected");
  RingElement e(spec);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3)
      throw InputError("ring element term: [coordinates, numerator, denominator] expected");
    GroupElement g = parse_group_element(term[0]);
    const std::int64_t num = term[1].get<std::int64_t>();
    const std::int64_t den = term[2].get<std::int64_t>();
    if (den == 0) throw InputError("ring element term: zero denominator");
    e.add_term(g, Rational(num, den));
  }
  return e;
}

json dump_ring_matrix(const RingMatrix& m, bool include_group) {
  json j;
  if (include_group) j["group"] = dump_group_spec(m.spec());
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json entries = json::array();
  for (const auto& [ij, e] : m.entries())
    entries.push_back(json::array({ij.first, ij.second, dump_ring_element(e)}));
  j["entries"] = entries;
  return j;
}

RingMatrix parse_ring_matrix(const json& j, std::optional<GroupSpec> spec) {
  if (!j.is_object()) throw InputError("matrix: object expected");
  if (j.contains("group")) spec = parse_group_spec(j.at("group"));
  if (!spec) throw InputError("matrix: no group spec available");
  RingMatrix m(*spec, j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& entry : j.at("entries")) {
    if (!entry.is_array() || entry.size() != 3)
      throw InputError("matrix entry: [row, col, element] expected");
    m.set_entry(entry[0].get<int>(), entry[1].get<int>(),
                parse_ring_element(entry[2], *spec));
  }
  return m;
}

json dump_complex(const CochainComplex& c) {
  json j;
  j["group"] = dump_group_spec(c.spec);
  j["ranks"] = c.ranks;
  json diffs = json::array();
  for (const auto& d : c.differentials)
    diffs.push_back(dump_ring_matrix(d, /*include_group=*/false));
  j["differentials"] = diffs;
  return j;
}

CochainComplex load_complex(const json& j) {
  if (!j.is_object()) throw InputError("complex: object expected");
  CochainComplex c;
  c.spec = parse_group_spec(j.at("group"));
  c.ranks = j.at("ranks").get<std::vector<int>>();
  for (const auto& d : j.at("differentials"))
    c.differentials.push_back(parse_ring_matrix(d, c.spec));
  require_valid(c);
  return c;
}

json dump_chain_map(const ChainMap& f) {
  json j;
  j["group"] = dump_group_spec(f.source.spec);
  j["source"] = dump_complex(f.source);
  j["target"] = dump_complex(f.target);
  json maps = json::array();
  for (const auto& m : f.maps)
    maps.push_back(dump_ring_matrix(m, /*include_group=*/false));
  j["maps"] = maps;
  return j;
}

ChainMap load_chain_map(const json& j) {
  ChainMap f;
  GroupSpec spec = parse_group_spec(j.at("group"));
  f.source = load_complex(j.at("source"));
  f.target = load_complex(j.at("target"));
  if (f.source.spec != spec || f.target.spec != spec)
    throw InputError("chain map: group spec mismatch");
  for (const auto& m : j.at("maps"))
    f.maps.push_back(parse_ring_matrix(m, spec));
  if (!is_chain_map(f)) throw InputError("chain map: maps do not commute with differentials");
  return f;
}

json dump_unit_product(const UnitProduct& p) {
  json j;
  j["group"] = dump_group_spec(p.spec);
  j["size"] = p.size;
  json fs = json::array();
  for (const auto& f : p.factors) {
    json fj;
    if (f.kind == UnitFactor::Kind::Elementary) {
      fj["kind"] = "elementary";
      fj["row"] = f.row;
      fj["col"] = f.col;
      fj["value"] = dump_ring_element(*f.value);
    } else {
      fj["kind"] = "diagonal_unit";
      fj["index"] = f.index;
      fj["sign"] = f.sign;
      fj["element"] = dump_group_element(f.element);
    }
    fs.push_back(fj);
  }
  j["factors"] = fs;
  return j;
}

UnitProduct parse_unit_product(const json& j) {
  UnitProduct p{parse_group_spec(j.at("group")), j.at("size").get<int>(), {}};
  if (!j.contains("factors") || !j.at("factors").is_array())
    throw InputError("unit product: \"factors\" array required");
  for (const auto& fj : j.at("factors")) {
    UnitFactor f;
    const std::string kind = fj.at("kind").get<std::string>();
    if (kind == "elementary") {
      f.kind = UnitFactor::Kind::Elementary;
      f.row = fj.at("row").get<int>();
      f.col = fj.at("col").get<int>();
      f.value = parse_ring_element(fj.at("value"), p.spec);
    } else if (kind == "diagonal_unit") {
      f.kind = UnitFactor::Kind::DiagonalUnit;
      f.index = fj.at("index").get<int>();
      f.sign = fj.at("sign").get<int>();
      f.element = parse_group_element(fj.at("element"));
    } else {
      throw InputError("unit product: unknown factor kind \"" + kind + "\"");
    }
    p.factors.push_back(std::move(f));
  }
  return p;
}

json dump_schedule(const Schedule& s) {
  json j;
  j["scheme"] = s.scheme == CompressionScheme::Folner ? "folner" : "quotient";
  j["levels"] = s.levels;
  j["threshold"] = report_number(s.kernel_theta);
  j["cap"] = s.dimension_cap;
  return j;
}

namespace {

json level_stats_json(const LevelStats& st) {
  json j;
  j["m"] = st.m;
  j["N"] = st.normalization;
  j["dim"] = st.dim;
  j["F_at_0"] = report_number(st.f_at_zero);
  j["norm_log_det"] = st.zero_operator ? json(nullptr) : report_number(st.norm_log_det);
  j["min_pos_eig"] = report_number(st.min_pos_eig);
  return j;
}

json gap_json(const GapDiagnostics& g) {
  json j;
  j["K_sq"] = report_number(g.k_sq);
  j["spectral_floor"] = report_number(g.spectral_floor);
  j["gap_ok"] = g.gap_ok;
  return j;
}

}  // namespace

json det_report(const DetEstimate& est, const json& config_echo,
                const GroupSpec& spec) {
  json j;
  j["command"] = "det";
  j["config"] = config_echo;
  j["group"] = dump_group_spec(spec);
  json levels = json::array();
  for (const auto& st : est.levels) levels.push_back(level_stats_json(st));
  j["levels"] = levels;
  json per_level = json::array();
  for (double v : est.log_det_by_level) per_level.push_back(report_number(v));
  j["log_det_by_level"] = per_level;
  j["log_det"] = report_number(est.log_det);
  j["det"] = report_number(est.det);
  j["slope"] = report_number(est.slope);
  j["gap"] = gap_json(est.gap);
  j["squared_route"] = est.squared_route;
  return j;
}

json torsion_report(const TorsionReport& r, const json& config_echo,
                    const GroupSpec& spec) {
  json j;
  j["command"] = "torsion";
  j["config"] = config_echo;
  j["group"] = dump_group_spec(spec);
  json degrees = json::array();
  for (const auto& deg : r.degrees) {
    json dj;
    dj["degree"] = deg.degree;
    dj["rank"] = deg.rank;
    dj["betti"] = report_number(deg.betti);
    dj["log_det_plus"] = report_number(deg.log_det_plus);
    dj["zero_operator"] = deg.zero_operator;
    dj["det_class"] = {{"verdict", deg.det_class.pass ? "pass" : "inconclusive"},
                       {"finite_estimate", report_number(deg.det_class.finite_estimate)},
                       {"near_zero_mass", report_number(deg.det_class.near_zero_mass)}};
    json levels = json::array();
    for (const auto& st : deg.levels) levels.push_back(level_stats_json(st));
    dj["levels"] = levels;
    degrees.push_back(dj);
  }
  j["degrees"] = degrees;
  j["log_torsion"] = report_number(r.log_torsion);
  j["unreliable"] = r.unreliable;
  j["euler_characteristic"] = r.euler_characteristic;
  return j;
}

json betti_report(const std::vector<double>& betti, std::int64_t euler,
                  const json& config_echo, const GroupSpec& spec) {
  json j;
  j["command"] = "betti";
  j["config"] = config_echo;
  j["group"] = dump_group_spec(spec);
  json values = json::array();
  for (double b : betti) values.push_back(report_number(b));
  j["betti"] = values;
  j["euler_characteristic"] = euler;
  double alternating = 0.0;
  for (std::size_t i = 0; i < betti.size(); ++i)
    alternating += (i % 2 == 0 ? 1.0 : -1.0) * betti[i];
  j["alternating_sum"] = report_number(alternating);
  return j;
}

json cone_report(const ConeCheckReport& r, const json& config_echo,
                 const GroupSpec& spec) {
  json j;
  j["command"] = "cone_check";
  j["config"] = config_echo;
  j["group"] = dump_group_spec(spec);
  j["log_source"] = report_number(r.log_source);
  j["log_target"] = report_number(r.log_target);
  j["log_cone"] = report_number(r.log_cone);
  j["harmonic_correction"] = report_number(r.harmonic_correction);
  j["residual"] = report_number(r.residual);
  json betti = json::array();
  for (double b : r.cone_betti) betti.push_back(report_number(b));
  j["cone_betti"] = betti;
  j["exact_mode"] = r.exact_mode;
  return j;
}

std::string density_csv(const SpectralDensity& s) {
  std::ostringstream os;
  os << "lambda,F_m\n";
  char buf[64];
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lambda = s.eigenvalues[i];
    std::snprintf(buf, sizeof(buf), "%.12g", lambda);
    os << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.12g", s.value(lambda));
    os << buf << "\n";
  }
  return os.str();
}

std::string convergence_csv(const std::vector<LevelStats>& levels,
                            std::optional<int> degree) {
  std::ostringstream os;
  if (degree)
    os << "degree,";
  os << "m,N_m,dim,F_at_0,norm_log_det,min_pos_eig,wall_ms\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };
  for (const auto& st : levels) {
    if (degree) os << *degree << ",";
    os << st.m << "," << st.normalization << "," << st.dim << ","
       << num(st.f_at_zero) << "," << num(st.norm_log_det) << ","
       << num(st.min_pos_eig) << "," << num(st.wall_ms) << "\n";
  }
  return os.str();
}

std::vector<int> parse_levels(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("levels: cannot parse \"" + item + "\" as an integer");
    }
  }
  if (out.empty()) throw InputError("levels: empty list");
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw InputError("cannot open " + tmp.string() + " for writing");
    os << contents;
    if (!os) throw InputError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace l2
