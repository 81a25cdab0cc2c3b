#ifndef L2_IO_HPP
#define L2_IO_HPP

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "l2/invariants.hpp"
#include "l2/oracles.hpp"

namespace l2 {

using json = nlohmann::json;

/// Doubles in reports are carried with 12 significant digits.
double round12(double x);
json report_number(double x);  // NaN becomes null

// group specs: {"kind":"free_abelian","d":2} | {"kind":"finite_cyclic","n":4}
// | {"kind":"finite_abelian","factors":[...]} | {"kind":"heisenberg"}
// | {"kind":"heisenberg_mod","m":2} | {"kind":"product","factors":[...]}
json dump_group_spec(const GroupSpec& spec);
GroupSpec parse_group_spec(const json& j);

// elements: plain integer arrays
json dump_group_element(const GroupElement& g);
GroupElement parse_group_element(const json& j);

// ring elements: list of [coordinates, numerator, denominator]
json dump_ring_element(const RingElement& e);
RingElement parse_ring_element(const json& j, const GroupSpec& spec);

// matrices: {"rows":n,"cols":m,"entries":[[i,j,element],...]} with 0-based
// indices; "group" is included when no enclosing object supplies it
json dump_ring_matrix(const RingMatrix& m, bool include_group = true);
RingMatrix parse_ring_matrix(const json& j,
                             std::optional<GroupSpec> spec = std::nullopt);

// complexes: {"group":...,"ranks":[...],"differentials":[matrix,...]}
json dump_complex(const CochainComplex& c);
/// Parses and validates; invalid complexes are refused with InputError.
CochainComplex load_complex(const json& j);

// chain maps: {"group":...,"source":complex,"target":complex,"maps":[...]}
json dump_chain_map(const ChainMap& f);
ChainMap load_chain_map(const json& j);

// unit products: {"group":...,"size":n,"factors":[
//   {"kind":"elementary","row":i,"col":j,"value":element} |
//   {"kind":"diagonal_unit","index":i,"sign":1,"element":[...]} ]}
json dump_unit_product(const UnitProduct& p);
UnitProduct parse_unit_product(const json& j);

json dump_schedule(const Schedule& s);

// stable report formats (JSON; no timing fields)
json det_report(const DetEstimate& est, const json& config_echo,
                const GroupSpec& spec);
json torsion_report(const TorsionReport& r, const json& config_echo,
                    const GroupSpec& spec);
json betti_report(const std::vector<double>& betti, std::int64_t euler,
                  const json& config_echo, const GroupSpec& spec);
json cone_report(const ConeCheckReport& r, const json& config_echo,
                 const GroupSpec& spec);

// CSV views
std::string density_csv(const SpectralDensity& s);
std::string convergence_csv(const std::vector<LevelStats>& levels,
                            std::optional<int> degree = std::nullopt);

std::vector<int> parse_levels(const std::string& csv);

/// Atomic file write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace l2

#endif  // L2_IO_HPP
