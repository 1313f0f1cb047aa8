#include "commands.hpp"

#include "io.hpp"
#include "schema.hpp"

#include "kll/counting.hpp"
#include "kll/error.hpp"
#include "kll/quatalg.hpp"

#include <map>

namespace kll::cli {

namespace {

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= n; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

ojson poly_json(const std::vector<Integer>& c) {
    ojson j = ojson::array();
    for (const auto& x : c) j.push_back(str(x));
    return j;
}

ojson component_json(const SingularLocus& locus, const LocusComponent& c) {
    ojson ids = ojson::array();
    for (int e : c.edges) ids.push_back(locus.edges[static_cast<std::size_t>(e)].id);
    return ojson{{"edges", ids}, {"vertices", c.vertices}, {"euler", c.euler}, {"b1", c.b1}, {"circle", c.circle}};
}

ojson cheeger_single(const CosetGraph& g, const Budget& budget) {
    ojson out;
    if (static_cast<unsigned>(g.vertices) <= budget.max_cheeger_vertices) {
        const CheegerResult r = cheeger_exact(g, budget);
        out["h"] = str(r.h);
        out["witness"] = r.witness;
    } else {
        out["h"] = nullptr;
    }
    out["vertices"] = g.vertices;
    out["edges"] = g.edges.size();
    out["max_degree"] = g.max_degree();
    if (g.is_connected() && g.vertices <= kMaxSpectralVertices && g.vertices > 1) {
        const SpectralBounds s = cheeger_spectral_bounds(g);
        out["spectral"] = ojson{{"lambda2", enclosure(s.lambda2)}, {"lower", str(s.lower)}, {"upper", str(s.upper)}};
    }
    return out;
}

ojson tau_json(const TauReport& r) {
    ojson entries = ojson::array();
    for (const auto& e : r.entries) {
        ojson x;
        x["vertices"] = e.vertices;
        x["exact"] = e.exact ? ojson(str(*e.exact)) : ojson(nullptr);
        x["lower"] = str(e.lower);
        x["upper"] = str(e.upper);
        entries.push_back(x);
    }
    return ojson{{"entries", entries}, {"inf_lower", str(r.inf_lower)}, {"inf_upper", str(r.inf_upper)},
                 {"verdict", to_string(r.verdict)}};
}

std::vector<CosetGraph> graph_family(const json& in) {
    std::vector<CosetGraph> out;
    for (const auto& g : in.at("graphs")) out.push_back(to_coset_graph(g));
    return out;
}

std::vector<json> as_list(const json& v) { return std::vector<json>(v.begin(), v.end()); }

}  // namespace

std::string schema_for(const std::string& command) {
    static const std::map<std::string, std::string> m = {
        {"field", "field.schema.json"},         {"algebra", "algebra.schema.json"},
        {"order", "order.schema.json"},         {"orbifold", "orbifold.schema.json"},
        {"graph", "graph.schema.json"},         {"quotient", "quotient.schema.json"},
        {"tower", "tower_record.schema.json"},  {"count", ""},
        {"cheeger", ""},
    };
    const auto it = m.find(command);
    if (it == m.end()) throw InvalidArgument("unknown command " + command);
    return it->second;
}

// ---------------------------------------------------------------------------

ojson run_field(const json& in, const RunOptions&) {
    const NumberField k = to_field(in.at("poly"));
    ojson out;
    out["poly"] = poly_json(to_poly(in.at("poly")));
    out["degree"] = k.degree();
    out["signature"] = {k.signature().r1, k.signature().r2};
    out["irreducible"] = {{"verified", k.irreducibility().verified}, {"method", k.irreducibility().method}};
    out["poly_discriminant"] = str(k.poly_discriminant());

    std::vector<std::int64_t> primes;
    if (in.contains("primes"))
        for (const auto& p : in["primes"]) primes.push_back(p.get<std::int64_t>());
    else
        primes = primes_up_to(50);
    std::map<std::int64_t, std::vector<PrimeIdeal>> split;
    ojson rows = ojson::array();
    for (std::int64_t p : primes) {
        ojson row;
        row["p"] = p;
        row["p_maximal"] = dedekind_p_maximal(k.min_poly(), p);
        if (!row["p_maximal"].get<bool>()) {
            row["ideals"] = nullptr;
            rows.push_back(row);
            continue;
        }
        ojson ideals = ojson::array();
        for (const auto& pr : split[p] = split_prime(k, p)) {
            ojson x = prime_json(pr);
            x["local_quadratic"] = to_string(local_quadratic_subextension(pr));
            ideals.push_back(x);
        }
        row["ideals"] = ideals;
        rows.push_back(row);
    }
    out["primes"] = rows;

    if (in.contains("ramified")) {
        std::vector<PrimeIdeal> ram;
        for (const auto& pf : in["ramified"]) {
            const std::int64_t p = pf[0].get<std::int64_t>();
            const int f = pf[1].get<int>();
            if (!split.count(p)) split[p] = split_prime(k, p);
            bool found = false;
            for (const auto& pr : split[p])
                if (pr.residue_degree == f && !found) {
                    ram.push_back(pr);
                    found = true;
                }
            if (!found) throw InvalidArgument("no prime of residue degree " + std::to_string(f) + " above " + std::to_string(p));
        }
        const ClozelResult c = clozel_hypothesis(k, ram);
        out["clozel"] = {{"verdict", to_string(c.verdict)},
                         {"witness", c.witness ? prime_json(*c.witness) : ojson(nullptr)}};
    }
    return out;
}

ojson run_algebra(const json& in, const RunOptions&) {
    const NumberField k = to_field(in.contains("field") ? in["field"] : json::array({0, 1}));
    const QuaternionAlgebra b(to_element(k, in.at("a")), to_element(k, in.at("b")));
    const RamificationReport r = ramification(b);
    ojson out;
    out["field"] = poly_json(to_poly(in.contains("field") ? in["field"] : json::array({0, 1})));
    out["a"] = b.a().to_string();
    out["b"] = b.b().to_string();
    out["real_places"] = r.real_places;
    out["real_places_ramified"] = r.real_places_ramified;
    ojson fin = ojson::array();
    std::vector<PrimeIdeal> ramified;
    for (const auto& f : r.finite) {
        ojson x = prime_json(f.prime);
        x["status"] = to_string(f.status);
        fin.push_back(x);
        if (f.status == LocalStatus::Ramified) ramified.push_back(f.prime);
    }
    out["finite"] = fin;
    out["finite_ramified"] = r.finite_ramified();
    out["undecided"] = r.undecided();
    out["parity_consistent"] = r.parity_consistent;
    if (in.value("clozel", false)) {
        const ClozelResult c = clozel_hypothesis(k, ramified);
        out["clozel"] = {{"verdict", to_string(c.verdict)},
                         {"witness", c.witness ? prime_json(*c.witness) : ojson(nullptr)}};
    }
    return out;
}

ojson run_order(const json& in, const RunOptions&) {
    const NumberField k = to_field(in.at("field"));
    const Mat2 a = to_matrix(k, in.at("a")), b = to_matrix(k, in.at("b"));
    ojson out;
    out["trace_identities"] = verify_trace_identities(a, b);
    const ElementaryOrder o = build_order(a, b);
    ojson basis = ojson::array();
    for (const auto& m : o.basis) basis.push_back(matrix_json(m));
    ojson structure = ojson::array();
    for (const auto& row : o.structure) {
        ojson r = ojson::array();
        for (const auto& c : row) r.push_back(c.to_string());
        structure.push_back(r);
    }
    out["order"] = {{"basis", basis},
                    {"structure", structure},
                    {"all_integral", o.all_integral},
                    {"discriminant", order_discriminant(o).to_string()}};
    out["commutator_trace_minus_two"] = commutator_trace_minus_two(a, b).to_string();
    const JorgensenInvolution j = jorgensen_involution(a, b);
    out["jorgensen"] = {{"tau", matrix_json(j.tau)},
                        {"trace_zero", j.trace_zero},
                        {"square_scalar", j.square_scalar},
                        {"inverts_a", j.inverts_a},
                        {"inverts_b", j.inverts_b}};
    return out;
}

ojson run_orbifold(const json& in, const RunOptions&) {
    const OrbifoldData d = to_orbifold(in);
    const std::int64_t p = in.value("p", std::int64_t{2});
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    ojson out;
    if (in.contains("name")) out["name"] = in["name"];
    out["p"] = p;
    const Stratification s = stratify(d.locus, p);
    auto comps = [&](const std::vector<LocusComponent>& v) {
        ojson a = ojson::array();
        for (const auto& c : v) a.push_back(component_json(d.locus, c));
        return a;
    };
    out["sing_p"] = {{"zero", comps(s.zero)}, {"negative", comps(s.negative)}, {"positive", comps(s.positive)},
                     {"b1", s.b1()}, {"edges", s.edge_count()}};
    const HomologyBound h = homology_lower_bound(d, p);
    out["homology"] = {{"d_p", h.actual}, {"d_p_smith", h.actual_smith}, {"b1_sing_p", h.bound}, {"holds", h.holds}};
    const DeficitReport df = presentation_deficit(d);
    out["deficit"] = {{"manifold_deficit", df.manifold_deficit}, {"meridian_relators", df.meridian_relators},
                      {"deficit", df.deficit}, {"bound", df.bound}, {"holds", df.holds}};
    if (in.contains("phi")) {
        std::vector<Integer> phi;
        for (const auto& x : in["phi"]) phi.push_back(to_integer(x));
        const FibrationCheck f = fibration_hypothesis(d, phi, p);
        out["fibration"] = {{"satisfied", f.satisfied}, {"witness", f.witness}, {"unknown_core", f.unknown_core}};
    }
    return out;
}

ojson run_graph(const json& in, const RunOptions&) {
    const TrivalentGraph g = to_trivalent(in);
    ojson out;
    if (in.contains("name")) out["name"] = in["name"];
    out["V"] = g.V;
    out["E"] = g.edges.size();
    out["connected"] = g.is_connected();
    out["b1"] = g.first_betti();
    if (!g.is_connected()) throw Disconnected("trivalent graph is not connected");
    const CycleResult c = short_cycle(g);
    out["short_cycle"] = {{"length", c.edges.size()}, {"edges", c.edges}, {"root", c.root},
                          {"bound", enclosure(c.bound)}, {"holds", c.holds}};
    if (g.edges.size() <= 64) out["girth"] = girth_exhaustive(g);
    if (g.first_betti() >= 2) {
        const SubgraphResult s = b1_two_subgraph(g);
        out["b1_two_subgraph"] = {{"size", s.edges.size()}, {"edges", s.edges}, {"root", s.root},
                                  {"bound", enclosure(s.bound)}, {"holds", s.holds}, {"method", s.method}};
    }
    return out;
}

ojson run_tower(const json& in, const RunOptions&) {
    ojson out;
    if (in.contains("n1")) {
        const TowerBoundReport r = tower_lower_bound(to_integer(in["n1"]), in.value("depth", 30));
        ojson levels = ojson::array();
        for (const auto& l : r.levels)
            levels.push_back({{"i", l.i}, {"n", str(l.n)}, {"bound", str(l.bound)}, {"holds", l.holds}, {"ratio", str(l.ratio)}});
        out["n1"] = str(to_integer(in["n1"]));
        out["levels"] = levels;
        out["inf_ratio"] = str(r.inf_ratio);
        out["all_hold"] = r.all_hold;
        bool aux = true;
        for (int i = 1; i <= 64; ++i) aux = aux && auxiliary_inequality(i);
        out["auxiliary_inequality_1_to_64"] = aux;
    }
    if (in.contains("levels")) {
        const TowerRecord rec = to_tower_record(in);
        const LinearGrowthReport g = linear_growth_report(rec);
        ojson q = ojson::array();
        for (const auto& x : g.quotients) q.push_back(str(x));
        out["linear_growth"] = {{"quotients", q}, {"inf", str(g.inf)}, {"positive", g.positive}};
    }
    if (out.empty()) throw InvalidArgument("tower needs --n1 or a tower record");
    return out;
}

ojson run_quotient(const json& in, const RunOptions& opt) {
    const std::string mode = in.at("mode").get<std::string>();
    ojson out;
    out["mode"] = mode;
    if (mode == "surjectivity") {
        const TupleSet t = to_tuples(as_list(in.at("generators")));
        const SurjectivityReport r = product_surjectivity(t.space, t.elements, opt.budget);
        ojson factors = ojson::array();
        for (std::size_t i = 0; i < t.space.size(); ++i)
            factors.push_back({{"group", t.space.factors()[i].describe()},
                               {"order", r.factor_orders[i]},
                               {"image_order", r.factor_image_orders[i]},
                               {"surjective", static_cast<bool>(r.factor_surjective[i])}});
        out["factors"] = factors;
        out["product_order"] = str(r.product_order);
        out["image_order"] = r.image_order;
        out["onto"] = r.onto;
        out["hall_hypothesis"] = r.hall_hypothesis;
    } else if (mode == "normalizer") {
        const TupleSet t = to_tuples({in.at("a"), in.at("b")});
        const NormalizerReport r = normalizer_quotient_order(t.space, t.elements[0], t.elements[1], opt.budget);
        out["n"] = r.n;
        out["witness_order"] = r.witness_order;
        out["witness_quotient"] = str(r.witness_quotient);
        out["normalizer_order"] = r.normalizer_order ? ojson(str(*r.normalizer_order)) : ojson(nullptr);
        out["quotient_order"] = str(r.quotient_order);
        out["bound"] = str(r.bound);
        out["exact"] = r.exact;
        out["holds"] = r.holds;
    } else if (mode == "pullback") {
        const Presentation pres = to_presentation(in.at("presentation"));
        std::vector<json> all = as_list(in.at("images"));
        const std::size_t n_images = all.size();
        for (const auto& s : in.value("subgroup", json::array())) all.push_back(s);
        const TupleSet t = to_tuples(all);
        const std::vector<ProductElement> images(t.elements.begin(), t.elements.begin() + static_cast<long>(n_images));
        const std::vector<ProductElement> sub_gens(t.elements.begin() + static_cast<long>(n_images), t.elements.end());
        const std::vector<ProductElement> sub = product_closure(t.space, sub_gens, opt.budget);
        const CosetTable table = pullback_cover_table(pres, t.space, images, sub, opt.budget);
        out["subgroup_order"] = sub.size();
        out["index"] = table.index;
        out["action"] = table.action;
    } else if (mode == "reduce") {
        const NumberField k = to_field(in.at("field"));
        const std::int64_t p = in.at("prime").get<std::int64_t>();
        const auto ideals = split_prime(k, p);
        const auto idx = in.value("ideal", std::size_t{0});
        if (idx >= ideals.size()) throw InvalidArgument("ideal index out of range");
        std::vector<Mat2> gens;
        for (const auto& m : in.at("matrices")) gens.push_back(to_matrix(k, m));
        const ReductionResult r = reduce_mod_prime(gens, ideals[idx], in.value("projective", false));
        out["prime"] = prime_json(ideals[idx]);
        out["group"] = r.space.describe();
        ojson imgs = ojson::array();
        for (const auto& m : r.images) imgs.push_back(finite_json(r.space, m));
        out["images"] = imgs;
        if (in.contains("presentation")) {
            check_relators(to_presentation(in["presentation"]), r.space, r.images);
            out["relators_hold"] = true;
        }
        const FiniteMatrixGroup g(r.space, r.images, opt.budget);
        out["image_order"] = g.order();
    }
    return out;
}

ojson run_cheeger(const json& in, const RunOptions& opt) {
    if (in.contains("graphs")) {
        SchemaRegistry::builtin().validate(in, "graph_family.schema.json");
        const auto fam = graph_family(in);
        return tau_json(tau_family_report(fam, {}, opt.budget));
    }
    if (in.contains("cycle_family")) {
        std::vector<CosetGraph> fam;
        const int lo = in["cycle_family"][0].get<int>(), hi = in["cycle_family"][1].get<int>();
        if (lo < 1 || hi < lo) throw InvalidArgument("cycle family range must satisfy 1 <= lo <= hi");
        for (int n = lo; n <= hi; ++n) fam.push_back(CosetGraph::cycle(n));
        return tau_json(tau_family_report(fam, {}, opt.budget));
    }
    if (in.contains("cycle")) return cheeger_single(CosetGraph::cycle(in["cycle"].get<int>()), opt.budget);
    if (in.contains("complete")) return cheeger_single(CosetGraph::complete(in["complete"].get<int>()), opt.budget);
    SchemaRegistry::builtin().validate(in, "graph.schema.json");
    return cheeger_single(to_coset_graph(in), opt.budget);
}

ojson run_count(const json& in, const RunOptions& opt) {
    const bool over_field = in.contains("field");
    const std::int64_t m = over_field ? in["field"].get<std::int64_t>() : in.value("mod", std::int64_t{2});
    const int degree = in.value("degree", 1);
    if (m < 2) throw InvalidArgument("modulus must be at least 2");
    if (over_field && !is_prime(m)) throw InvalidArgument("--field takes a prime; use --degree for prime powers");
    const FiniteMatrixGroup group = over_field ? sl2_field(m, degree, opt.budget) : sl2_mod(m, opt.budget);
    const FiniteGroupCensus c = subgroup_census(group, opt.budget);
    ojson out;
    out["group"] = group.space().describe();
    out["order"] = c.group->order();
    out["subgroups"] = c.count();
    out["rank"] = c.rank();
    const RankCheck rc = rank_bound_check(c, degree);
    out["rank_bound"] = {{"bound", rc.bound}, {"holds", rc.holds}};
    const auto counts = c.count_by_index();
    ojson by = ojson::object();
    for (const auto& [index, count] : counts) by[std::to_string(index)] = count;
    out["count_by_index"] = by;
    out["minimal_proper_index"] = c.minimal_proper_index();
    const int d2 = d2_abelianization(*c.group);
    const auto it = counts.find(2);
    const std::uint64_t two = it == counts.end() ? 0 : it->second;
    out["index_two"] = {{"d2", d2}, {"count", two}, {"matches", two == (std::uint64_t{1} << d2) - 1}};
    out["within_rank_bound"] = subgroup_count_within_rank_bound(c);
    if (degree == 1) {
        const EssentialReport e = essential_subgroups(m, c);
        ojson ess;
        ess["count"] = e.essential.size();
        ess["minimal_index"] = e.minimal_index;
        ess["index_over_norm"] = str(e.index_over_norm);
        if (e.exceptional_prime) ess["exceptional_prime"] = *e.exceptional_prime;
        if (e.matches_q_plus_one) ess["matches_q_plus_one"] = *e.matches_q_plus_one;
        out["essential"] = ess;
    }
    if (in.value("dump", false)) {
        ojson subs = ojson::array();
        for (const auto& s : c.subgroups) {
            ojson gens = ojson::array();
            for (auto g : s.generators) gens.push_back(finite_json(group.space(), c.group->group().element(g)));
            subs.push_back({{"order", s.order}, {"min_generators", s.min_generators}, {"generators", gens}});
        }
        out["census"] = subs;
    }
    return out;
}

ojson run_command(const std::string& command, const json& in, const RunOptions& opt) {
    const std::string schema = schema_for(command);
    const bool from_flags = command == "tower" && in.contains("n1") && !in.contains("levels");
    if (!schema.empty() && !from_flags) SchemaRegistry::builtin().validate(in, schema);
    if (command == "field") return run_field(in, opt);
    if (command == "algebra") return run_algebra(in, opt);
    if (command == "order") return run_order(in, opt);
    if (command == "orbifold") return run_orbifold(in, opt);
    if (command == "graph") return run_graph(in, opt);
    if (command == "tower") return run_tower(in, opt);
    if (command == "quotient") return run_quotient(in, opt);
    if (command == "cheeger") return run_cheeger(in, opt);
    return run_count(in, opt);
}

std::string csv_for(const std::string& command, const json& in, const RunOptions& opt) {
    if (command == "tower" && in.contains("n1"))
        return tower_csv(tower_lower_bound(to_integer(in["n1"]), in.value("depth", 30)));
    if (command == "cheeger" && (in.contains("graphs") || in.contains("cycle_family"))) {
        std::vector<CosetGraph> fam;
        if (in.contains("graphs")) {
            fam = graph_family(in);
        } else {
            for (int n = in["cycle_family"][0].get<int>(); n <= in["cycle_family"][1].get<int>(); ++n)
                fam.push_back(CosetGraph::cycle(n));
        }
        return tau_csv(tau_family_report(fam, {}, opt.budget));
    }
    return "";
}

}  // namespace kll::cli
