#include "tordiv/io.hpp"

#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <openssl/evp.h>

namespace tordiv {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput(what); }

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) {
        bad(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

std::string label_or(const Json& j, const char* key, std::string fallback)
{
    if (j.is_object() && j.contains(key)) {
        if (!j.at(key).is_string()) {
            bad(std::string("field \"") + key + "\" must be a string");
        }
        return j.at(key).get<std::string>();
    }
    return fallback;
}

} // namespace

Json read_json(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        bad("cannot read " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        bad(path.string() + ": " + e.what());
    }
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

std::string sha256_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        bad("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

void write_atomic(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::random_device rd;
    const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, path);
}

std::size_t mu_from_json(const Json& j, const DiscriminantForm& disc)
{
    if (j.is_number_integer()) {
        const auto i = j.get<long long>();
        if (i < 0 || static_cast<std::size_t>(i) >= disc.order()) {
            bad("mu index " + std::to_string(i) + " out of range");
        }
        return static_cast<std::size_t>(i);
    }
    if (j.is_array()) {
        DiscriminantForm::Element e;
        for (const auto& x : j) {
            if (!x.is_number_integer()) {
                bad("mu element must be a list of integers");
            }
            e.push_back(x.get<long>());
        }
        if (e.size() != disc.cyclic_orders().size()) {
            bad("mu element has the wrong length");
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = mod(e[i], disc.cyclic_orders()[i]);
        }
        return disc.index(e);
    }
    bad("mu must be an index or an element of the discriminant group");
}

// --- scalars and vectors --------------------------------------------------------

Integer parse_integer(const Json& j)
{
    if (j.is_number_integer()) {
        return Integer(j.get<long long>());
    }
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    bad("expected an integer, got " + j.dump());
}

Rational parse_rational(const Json& j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    if (j.is_array() && j.size() == 2) {
        const Integer d = parse_integer(j[1]);
        if (d == 0) {
            bad("zero denominator in " + j.dump());
        }
        return Rational(parse_integer(j[0]), d);
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                return Rational(Integer(s));
            }
            const Integer d(s.substr(slash + 1));
            if (d != 0) {
                return Rational(Integer(s.substr(0, slash)), d);
            }
        } catch (const std::exception&) {
        }
    }
    bad("expected a rational, got " + j.dump());
}

IntVector parse_int_vector(const Json& j)
{
    if (!j.is_array()) {
        bad("expected a list of integers, got " + j.dump());
    }
    IntVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = parse_integer(j[i]);
    }
    return v;
}

IntMatrix parse_int_matrix(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        bad("expected a non-empty list of rows, got " + j.dump());
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
    IntMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const IntVector row = parse_int_vector(j[static_cast<std::size_t>(r)]);
        if (row.size() != cols) {
            bad("ragged matrix " + j.dump());
        }
        m.row(r) = row.transpose();
    }
    return m;
}

Json to_json(const Integer& z)
{
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max()) {
        return z.convert_to<long long>();
    }
    return z.str();
}

Json to_json(const Rational& r) { return Json::array({to_json(num(r)), to_json(den(r))}); }

Json to_json(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v) {
        a.push_back(to_json(x));
    }
    return a;
}

Json to_json(const IntMatrix& m)
{
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        a.push_back(to_json(IntVector(m.row(r).transpose())));
    }
    return a;
}

Json to_json(const LinearForm& f)
{
    if (f.is_constant()) {
        return to_json(f.constant);
    }
    Json s = Json::object();
    for (const auto& [name, c] : f.symbols) {
        s[name] = to_json(c);
    }
    return Json{{"constant", to_json(f.constant)}, {"symbols", s}};
}

Json element_json(const DiscriminantForm& disc, std::size_t index)
{
    Json a = Json::array();
    for (long x : disc.element(index)) {
        a.push_back(x);
    }
    return a;
}

Json to_json(const DivisorKey& k, const DiscriminantForm& disc)
{
    switch (k.type) {
    case DivisorKey::Type::Z: {
        Json j{{"type", "Z"}, {"m", to_json(k.m)}, {"mu", k.mu}, {"mu_element", element_json(disc, k.mu)}};
        const auto el = disc.element(k.mu);
        if (disc.index(disc.negate(el)) == k.mu) {
            j["two_mu_zero"] = true;
        }
        return j;
    }
    case DivisorKey::Type::BJ:
        return Json{{"type", "BJ"}, {"cusp", k.cusp}};
    case DivisorKey::Type::BIomega:
        return Json{{"type", "BIomega"}, {"cusp", k.cusp}, {"ray", k.ray}};
    }
    return {};
}

Json to_json(const FormalDivisor& d, const DiscriminantForm& disc)
{
    Json terms = Json::array();
    for (const auto& [k, c] : d.terms()) {
        terms.push_back(Json{{"key", to_json(k, disc)}, {"coeff", to_json(c)}});
    }
    return terms;
}

// --- lattices, cusps, fans ------------------------------------------------------------

EvenLattice lattice_from_json(const Json& j)
{
    const std::string label = label_or(j, "label", "L");
    return EvenLattice(parse_int_matrix(field(j, "gram", "lattice file")), label);
}

CuspFile cusp_from_json(const Json& j)
{
    CuspFile c;
    c.lattice = label_or(j, "lattice", "");
    c.z = parse_int_vector(field(j, "z", "cusp file"));
    if (j.contains("w")) {
        c.w = parse_int_vector(j.at("w"));
    }
    c.label = label_or(j, "label", c.w ? "J" : "I");
    if (j.contains("cone_reference")) {
        c.cone_reference = parse_int_vector(j.at("cone_reference"));
    }
    if (j.contains("k_basis")) {
        c.k_basis = parse_int_matrix(j.at("k_basis")).transpose();
    }
    return c;
}

Rank1CuspData rank1_from_file(const EvenLattice& L, const CuspFile& c)
{
    if (c.w) {
        bad("cusp " + c.label + " has w; a rank 1 cusp was expected");
    }
    if (!c.lattice.empty() && c.lattice != L.label()) {
        bad("cusp " + c.label + " refers to lattice " + c.lattice + ", not " + L.label());
    }
    return rank1_data(L, c.z, c.cone_reference, c.k_basis, c.label);
}

Rank2CuspData rank2_from_file(const EvenLattice& L, const CuspFile& c)
{
    if (!c.w) {
        bad("cusp " + c.label + " has no w; a rank 2 cusp was expected");
    }
    if (!c.lattice.empty() && c.lattice != L.label()) {
        bad("cusp " + c.label + " refers to lattice " + c.lattice + ", not " + L.label());
    }
    return rank2_data(L, c.z, *c.w, c.k_basis, c.label);
}

FanByOrbits fan_from_json(const Json& j)
{
    const std::string where = "fan file";
    FanByOrbits f;
    f.lattice_label = label_or(j, "lattice", "K");
    f.gram = parse_int_matrix(field(j, "gram", where));
    f.cone_reference = parse_int_vector(field(j, "cone_reference", where));
    for (const auto& g : field(j, "group_generators", where)) {
        f.group_generators.push_back(parse_int_matrix(g));
    }
    if (j.contains("isotropic_rays")) {
        for (const auto& r : j.at("isotropic_rays")) {
            f.isotropic_rays.push_back(parse_int_vector(r));
        }
    }
    for (const auto& c : field(j, "cones", where)) {
        std::vector<IntVector> gens;
        for (const auto& g : field(c, "generators", "cone")) {
            gens.push_back(parse_int_vector(g));
        }
        f.cones.push_back(make_cone(std::move(gens), label_or(c, "label", "cone-" + std::to_string(f.cones.size())),
                                    f.gram.rows()));
    }
    if (j.contains("word_bound")) {
        f.word_bound = j.at("word_bound").get<int>();
        if (f.word_bound < 1) {
            bad("word_bound must be positive");
        }
    }
    return f;
}

// --- series ---------------------------------------------------------------------------

VVQExpansion expansion_from_json(const Json& j, std::size_t dim,
                                 const std::function<std::size_t(const std::vector<long>&)>& index_of)
{
    const std::string where = "expansion file";
    const Integer den = parse_integer(field(j, "denominator", where));
    if (den <= 0) {
        bad("expansion denominator must be positive");
    }
    const Rational prec = parse_rational(field(j, "precision", where));
    const Rational floor = j.contains("floor") ? parse_rational(j.at("floor")) : Rational(0);
    VVQExpansion out(dim, den, floor, prec);
    for (const auto& comp : field(j, "components", where)) {
        std::vector<long> el;
        for (const auto& x : field(comp, "element", "component")) {
            el.push_back(x.get<long>());
        }
        const std::size_t idx = index_of(el);
        for (const auto& t : field(comp, "terms", "component")) {
            if (!t.is_array() || t.size() != 3) {
                bad("expansion term must be [exponent_numerator, coeff_num, coeff_den]");
            }
            const Rational e(parse_integer(t[0]), den);
            if (e < floor) {
                bad("expansion term below its floor");
            }
            out.add_term(e, idx, Rational(parse_integer(t[1]), parse_integer(t[2])));
        }
    }
    return out;
}

VVQExpansion g_plus_from_json(const Json& j, long N)
{
    return expansion_from_json(j, static_cast<std::size_t>(2 * N), [N](const std::vector<long>& el) {
        if (el.size() != 1) {
            bad("G_plus components are indexed by [r], r mod 2N");
        }
        return static_cast<std::size_t>(mod(el[0], 2 * N));
    });
}

PrincipalPart principal_part_from_json(const Json& j, const DiscriminantForm& disc)
{
    PrincipalPart F;
    if (!j.is_object()) {
        bad("principal part file must be an object");
    }
    if (j.contains("negative")) {
        for (const auto& t : j.at("negative")) {
            if (!t.is_array() || t.size() != 4) {
                bad("negative term must be [mu, m_num, m_den, c]");
            }
            const std::size_t mu = mu_from_json(t[0], disc);
            const Rational m(parse_integer(t[1]), parse_integer(t[2]));
            const Rational c = parse_rational(t[3]);
            if (!is_integral(c)) {
                bad("principal part coefficient " + c.str() + " is not integral");
            }
            F.negative[{mu, m}] += num(c);
        }
        std::erase_if(F.negative, [](const auto& kv) { return kv.second == 0; });
    }
    if (j.contains("constant")) {
        F.constants.emplace();
        for (const auto& t : j.at("constant")) {
            if (!t.is_array() || t.size() != 2) {
                bad("constant term must be [mu, c]");
            }
            const std::size_t mu = mu_from_json(t[0], disc);
            if (disc.q(disc.element(mu)) != 0) {
                bad("constant term at mu = " + std::to_string(mu) + " with q(mu) != 0");
            }
            (*F.constants)[mu] += parse_rational(t[1]);
        }
    }
    if (j.contains("extended")) {
        for (const auto& t : j.at("extended")) {
            if (!t.is_array() || t.size() != 4) {
                bad("extended term must be [mu, l_num, l_den, c]");
            }
            F.extended[{mu_from_json(t[0], disc), Rational(parse_integer(t[1]), parse_integer(t[2]))}] +=
                parse_rational(t[3]);
        }
        F.extended_precision = parse_rational(field(j, "extended_precision", "principal part file"));
    }
    F.validate(disc);
    return F;
}

// --- workspace ------------------------------------------------------------------------

CompactificationDatum load_workspace(const fs::path& path, std::vector<InputRecord>& inputs)
{
    const fs::path dir = path.parent_path();
    inputs.push_back({path.string(), sha256_file(path)});
    const Json ws = read_json(path);
    auto load = [&](const Json& ref) -> Json {
        if (ref.is_string()) {
            const fs::path p = dir / ref.get<std::string>();
            inputs.push_back({p.string(), sha256_file(p)});
            return read_json(p);
        }
        if (ref.is_object()) {
            return ref;
        }
        bad("workspace entries must be file names or objects");
    };

    CompactificationDatum d;
    d.lattice = lattice_from_json(load(field(ws, "lattice", "workspace")));
    d.cusp_space_trivial = ws.value("cusp_space_trivial", false);
    if (ws.contains("rank2_cusps")) {
        for (const auto& c : ws.at("rank2_cusps")) {
            d.rank2.push_back(rank2_from_file(d.lattice, cusp_from_json(load(c))));
        }
    }
    if (ws.contains("rank1_cusps")) {
        for (const auto& c : ws.at("rank1_cusps")) {
            Rank1Cusp cusp{rank1_from_file(d.lattice, cusp_from_json(load(field(c, "cusp", "rank1 cusp")))),
                           std::nullopt,
                           {}};
            if (c.contains("fan")) {
                cusp.fan = fan_from_json(load(c.at("fan")));
            }
            d.rank1.push_back(std::move(cusp));
        }
    }
    if (ws.contains("g_plus_overrides")) {
        for (const auto& o : ws.at("g_plus_overrides")) {
            const long N = field(o, "N", "g_plus override").get<long>();
            if (N < 1) {
                bad("g_plus override with N < 1");
            }
            d.g_plus_overrides.emplace(N, g_plus_from_json(load(field(o, "expansion", "g_plus override")), N));
        }
    }
    d.classify_rays();
    d.validate();
    return d;
}

} // namespace tordiv
