#pragma once

// JSON file formats: lattices, cusps, fans, expansions, principal parts,
// workspaces and reports. Malformed input throws InvalidInput.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tordiv/divisors.hpp"

namespace tordiv {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

Json read_json(const std::filesystem::path& path);
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);
/// Writes to a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Accepts an integer, "p/q", or [p, q].
Rational parse_rational(const Json& j);
Integer parse_integer(const Json& j);
IntVector parse_int_vector(const Json& j);
/// Rows of a matrix.
IntMatrix parse_int_matrix(const Json& j);

Json to_json(const Integer& z);
/// [numerator, denominator]
Json to_json(const Rational& r);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
/// [num, den] when constant, otherwise {"constant": [num, den], "symbols": {name: [num, den]}}.
Json to_json(const LinearForm& f);
Json to_json(const DivisorKey& k, const DiscriminantForm& disc);
Json to_json(const FormalDivisor& d, const DiscriminantForm& disc);

/// {"label": string, "gram": [[int]]}
EvenLattice lattice_from_json(const Json& j);

/// {"lattice": label, "z": [int], "w": [int]?, "cone_reference": [int]?, "k_basis": [[int]]?, "label": str?}
struct CuspFile {
    std::string lattice;
    std::string label;
    IntVector z;
    std::optional<IntVector> w;
    std::optional<IntVector> cone_reference; // L coordinates
    std::optional<IntMatrix> k_basis;        // lifts of the K basis, as columns
};
CuspFile cusp_from_json(const Json& j);
Rank1CuspData rank1_from_file(const EvenLattice& L, const CuspFile& c);
Rank2CuspData rank2_from_file(const EvenLattice& L, const CuspFile& c);

/// {"lattice", "gram", "cone_reference", "group_generators", "isotropic_rays", "cones", "word_bound"}
FanByOrbits fan_from_json(const Json& j);

/// {"denominator", "components": [{"element": [int], "terms": [[e_num, c_num, c_den]]}],
///  "precision", "floor"}; `index_of` maps an element to a component.
VVQExpansion expansion_from_json(const Json& j, std::size_t dim,
                                 const std::function<std::size_t(const std::vector<long>&)>& index_of);
/// Components indexed by r mod 2N.
VVQExpansion g_plus_from_json(const Json& j, long N);

/// {"constant": [[mu, c]]?, "negative": [[mu, m_num, m_den, c]],
///  "extended": [[mu, l_num, l_den, c]]?, "extended_precision": rational?}; mu is an
/// index or an element of Delta_L.
PrincipalPart principal_part_from_json(const Json& j, const DiscriminantForm& disc);

struct InputRecord {
    std::string path;
    std::string sha256;
};

/// {"lattice": file|object, "rank1_cusps": [{"cusp": file|object, "fan": file|object?}],
///  "rank2_cusps": [file|object], "cusp_space_trivial": bool,
///  "g_plus_overrides": [{"N": int, "expansion": file|object}]}; relative paths
/// resolve against the workspace directory. Every loaded file is recorded in `inputs`.
CompactificationDatum load_workspace(const std::filesystem::path& path, std::vector<InputRecord>& inputs);

/// An index or an element (coordinates reduced mod the cyclic orders).
std::size_t mu_from_json(const Json& j, const DiscriminantForm& disc);

Json element_json(const DiscriminantForm& disc, std::size_t index);

} // namespace tordiv
