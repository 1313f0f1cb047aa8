#include "io.hpp"

#include "kll/error.hpp"

#include <limits>

namespace kll::cli {

Integer to_integer(const json& v) {
    if (v.is_number_integer()) return Integer(std::to_string(v.get<std::int64_t>()));
    if (v.is_string()) {
        Integer z;
        if (z.set_str(v.get<std::string>(), 10) != 0) throw InvalidArgument("not an integer: " + v.dump());
        return z;
    }
    throw InvalidArgument("expected an integer, got " + v.dump());
}

Rational to_rational(const json& v) {
    if (v.is_number_integer()) return Rational(to_integer(v));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InvalidArgument("expected a rational, got " + v.dump());
}

std::int64_t to_small(const json& v) {
    const Integer z = to_integer(v);
    if (!z.fits_slong_p()) throw InvalidArgument("value out of range: " + v.dump());
    return z.get_si();
}

std::vector<Integer> to_poly(const json& v) {
    std::vector<Integer> c;
    for (const auto& x : v) c.push_back(to_integer(x));
    return c;
}

NumberField to_field(const json& v) { return NumberField::from_coefficients(to_poly(v)); }

FieldElement to_element(const NumberField& k, const json& v) {
    if (!v.is_array()) return FieldElement::from_rational(k, to_rational(v));
    std::vector<Rational> c;
    for (const auto& x : v) c.push_back(to_rational(x));
    if (static_cast<int>(c.size()) > k.degree()) throw InvalidArgument("element has more coordinates than the field degree");
    c.resize(static_cast<std::size_t>(k.degree()), Rational(0));
    return FieldElement(k, c);
}

Mat2 to_matrix(const NumberField& k, const json& v) {
    return Mat2(to_element(k, v[0]), to_element(k, v[1]), to_element(k, v[2]), to_element(k, v[3]));
}

Word to_word(const Presentation& pres, const json& v) {
    Word w;
    if (v.is_string()) {
        const Presentation one = Presentation::parse(pres.generators, {v.get<std::string>()});
        return one.relators.empty() ? Word{} : one.relators.front();
    }
    for (const auto& x : v) {
        const int g = x.get<int>();
        if (g == 0 || std::abs(g) > pres.rank()) throw InvalidArgument("generator index out of range in " + v.dump());
        w.push_back(g);
    }
    return w;
}

Presentation to_presentation(const json& v) {
    Presentation p;
    for (const auto& g : v.at("gens")) p.generators.push_back(g.get<std::string>());
    for (const auto& r : v.at("rels")) {
        Word w = to_word(p, r);
        if (!w.empty()) p.relators.push_back(std::move(w));
    }
    return p;
}

OrbifoldData to_orbifold(const json& v) {
    OrbifoldData d;
    d.manifold = to_presentation(v.at("manifold"));
    const json& locus = v.at("locus");
    const json& verts = locus.at("vertices");
    d.locus.vertices = verts.is_array() ? static_cast<int>(verts.size()) : verts.get<int>();
    for (const auto& e : locus.at("edges")) {
        LocusEdge edge;
        edge.id = e.at("id").get<std::string>();
        for (const auto& x : e.at("ends")) edge.ends.push_back(x.get<int>());
        edge.order = e.at("order").get<int>();
        edge.meridian = to_word(d.manifold, e.at("meridian"));
        if (e.contains("core")) edge.core = to_word(d.manifold, e.at("core"));
        d.locus.edges.push_back(std::move(edge));
    }
    d.validate();
    return d;
}

TrivalentGraph to_trivalent(const json& v) {
    TrivalentGraph g;
    g.V = v.at("V").get<int>();
    for (const auto& e : v.at("edges")) g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    g.validate();
    return g;
}

CosetGraph to_coset_graph(const json& v) {
    CosetGraph g;
    g.vertices = v.at("V").get<int>();
    for (const auto& e : v.at("edges")) g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    if (v.contains("generator_set_size")) g.generator_set_size = v["generator_set_size"].get<int>();
    g.validate();
    return g;
}

TowerRecord to_tower_record(const json& v) {
    TowerRecord r;
    for (const auto& l : v.at("levels")) {
        TowerRecordLevel level{to_integer(l.at("degree")), to_integer(l.at("d_p")), {}, {}};
        if (l.contains("vertex_count")) level.vertex_count = to_integer(l["vertex_count"]);
        if (l.contains("chi_sing_minus")) level.chi_sing_minus = to_integer(l["chi_sing_minus"]);
        r.levels.push_back(std::move(level));
    }
    r.validate(v.value("nested", true));
    return r;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

MatrixSpace to_space(std::int64_t modulus, bool projective) {
    return MatrixSpace(is_prime(modulus) ? FiniteRing::field(modulus) : FiniteRing::integers_mod(modulus), projective);
}

TupleSet to_tuples(const std::vector<json>& tuples) {
    if (tuples.empty()) throw InvalidArgument("no group elements given");
    std::vector<MatrixSpace> factors;
    for (const auto& f : tuples.front()) factors.push_back(to_space(f[2].get<std::int64_t>(), f[3].get<bool>()));
    TupleSet out{ProductSpace(factors), {}};
    for (const auto& t : tuples) {
        if (t.size() != factors.size()) throw InvalidArgument("tuples of different lengths");
        ProductElement x;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& f = t[i];
            if (!(to_space(f[2].get<std::int64_t>(), f[3].get<bool>()) == factors[i]))
                throw InvalidArgument("factor " + std::to_string(i) + " uses a different ring");
            const FiniteRing& r = factors[i].ring();
            x.push_back(factors[i].make(r.from_int(f[0][0].get<std::int64_t>()), r.from_int(f[0][1].get<std::int64_t>()),
                                        r.from_int(f[1][0].get<std::int64_t>()), r.from_int(f[1][1].get<std::int64_t>())));
        }
        out.space.check(x);
        out.elements.push_back(out.space.normalize(x));
    }
    return out;
}

std::string str(const Integer& z) { return to_string(z); }
std::string str(const Rational& q) { return to_string(q); }

ojson enclosure(const Interval& i) { return ojson{{"lo", str(i.lo)}, {"hi", str(i.hi)}}; }

ojson prime_json(const PrimeIdeal& p) {
    ojson j;
    j["p"] = p.rational_prime;
    j["e"] = p.ramification_index;
    j["f"] = p.residue_degree;
    j["norm"] = str(p.norm());
    j["local_factor"] = p.local_factor.coeffs();
    return j;
}

ojson matrix_json(const Mat2& m) {
    ojson j = ojson::array();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) j.push_back(m.at(r, c).to_string());
    return j;
}

ojson finite_json(const MatrixSpace& space, const Mat2F& m) {
    const FiniteRing& r = space.ring();
    auto entry = [&](std::int64_t x) -> ojson {
        if (r.degree() == 1) return x;
        std::vector<std::int64_t> c = r.to_poly(x).coeffs();
        c.resize(static_cast<std::size_t>(r.degree()), 0);
        return c;
    };
    return ojson::array({ojson::array({entry(m.e[0]), entry(m.e[1])}), ojson::array({entry(m.e[2]), entry(m.e[3])})});
}

}  // namespace kll::cli
