#include "commands.hpp"
#include "io.hpp"
#include "schema.hpp"

#include "kll/counting.hpp"
#include "kll/error.hpp"
#include "kll/fpgroups.hpp"
#include "kll/quatalg.hpp"

#include <functional>
#include <sstream>

namespace kll::cli {

extern const std::string& embedded_corpus();

namespace {

// Collects mismatches for one entry.
class Checker {
public:
    template <class T, class U>
    void equal(const std::string& what, const T& got, const U& want) {
        if (!(got == want)) {
            std::ostringstream s;
            s << what << ": got " << show(got) << ", expected " << show(want);
            problems_.push_back(s.str());
        }
    }
    void require(const std::string& what, bool ok) {
        if (!ok) problems_.push_back(what);
    }
    const std::vector<std::string>& problems() const { return problems_; }

private:
    template <class T>
    static std::string show(const T& v) {
        if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>) {
            return to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
            return v ? "true" : "false";
        } else if constexpr (std::is_convertible_v<T, std::string>) {
            return std::string(v);
        } else if constexpr (std::is_arithmetic_v<T>) {
            return std::to_string(v);
        } else {
            return json(v).dump();
        }
    }
    std::vector<std::string> problems_;
};

void check_field(const json& e, Checker& c) {
    const NumberField k = to_field(e.at("poly"));
    const json& x = e.at("expect");
    if (x.contains("signature"))
        c.equal("signature", std::vector<int>{k.signature().r1, k.signature().r2}, x["signature"].get<std::vector<int>>());
    if (x.contains("poly_discriminant")) c.equal("poly_discriminant", k.poly_discriminant(), to_integer(x["poly_discriminant"]));
    if (x.contains("discriminant_over_square")) {
        // disc = D * s^2 for the given D
        const Integer d = to_integer(x["discriminant_over_square"]);
        const Integer disc = k.poly_discriminant();
        const bool divides = d != 0 && disc % d == 0;
        const Integer q = divides ? Integer(disc / d) : Integer(-1);
        c.require("poly discriminant " + str(disc) + " is not " + str(d) + " times a square",
                  divides && q > 0 && mpz_perfect_square_p(q.get_mpz_t()) != 0);
    }
    if (x.contains("prime_degrees")) {
        // {"p": 11, "f": 2, "count": 1}
        for (const auto& pd : x["prime_degrees"]) {
            const auto p = pd.at("p").get<std::int64_t>();
            const int f = pd.at("f").get<int>();
            int n = 0;
            for (const auto& pr : split_prime(k, p)) n += pr.residue_degree == f;
            c.equal("primes of degree " + std::to_string(f) + " above " + std::to_string(p), n, pd.at("count").get<int>());
        }
    }
    if (x.contains("clozel")) {
        std::vector<PrimeIdeal> ram;
        for (const auto& pf : e.at("ramified"))
            for (const auto& pr : split_prime(k, pf[0].get<std::int64_t>()))
                if (pr.residue_degree == pf[1].get<int>()) {
                    ram.push_back(pr);
                    break;
                }
        const ClozelResult r = clozel_hypothesis(k, ram);
        c.equal("clozel verdict", to_string(r.verdict), x["clozel"].at("verdict").get<std::string>());
        if (x["clozel"].contains("witness_norm"))
            c.equal("clozel witness norm", r.witness ? r.witness->norm() : Integer(0), to_integer(x["clozel"]["witness_norm"]));
    }
}

void check_tau(const json& e, Checker& c) {
    const json& x = e.at("expect");
    for (const auto& row : x.at("rows")) {
        const int n = row.at("n").get<int>();
        const DihedralReport r = dihedral_ramification_analysis(n);
        const std::string tag = "tau_" + std::to_string(n);
        if (row.contains("tau")) c.equal(tag, r.tau.tau.to_string(), row["tau"].get<std::string>());
        if (row.contains("abs_norm")) c.equal(tag + " |norm|", Rational(abs(r.norm)), to_rational(row["abs_norm"]));
        if (row.contains("rule_consistent")) c.equal(tag + " agrees with the prime-power rule", r.rule_consistent, row["rule_consistent"].get<bool>());
    }
}

void check_gs(const json& e, Checker& c) {
    const Integer d = to_integer(e.at("d"));
    c.equal("chain positive at d", to_string(golod_shafarevich_chain(d).positive), std::string("true"));
    c.equal("chain positive at d - 1", to_string(golod_shafarevich_chain(d - 1).positive), std::string("false"));
}

void check_recurrence(const json& e, Checker& c) {
    const TowerBoundReport r = tower_lower_bound(to_integer(e.at("n1")), e.value("depth", 30));
    c.equal("all tower bounds hold", r.all_hold, e["expect"].at("all_hold").get<bool>());
    const int upto = e["expect"].value("auxiliary_upto", 0);
    for (int i = 1; i <= upto; ++i)
        if (!auxiliary_inequality(i)) c.require("auxiliary inequality fails at i = " + std::to_string(i), false);
}

void check_hall(const json& e, Checker& c, const RunOptions& opt) {
    const TupleSet t = to_tuples(std::vector<json>(e.at("generators").begin(), e.at("generators").end()));
    const SurjectivityReport r = product_surjectivity(t.space, t.elements, opt.budget);
    const json& x = e.at("expect");
    c.equal("image order", Integer(std::to_string(r.image_order)), to_integer(x.at("image_order")));
    c.equal("onto", r.onto, x.at("onto").get<bool>());
    if (x.contains("each_factor_onto")) {
        bool all = true;
        for (bool b : r.factor_surjective) all = all && b;
        c.equal("each factor onto", all, x["each_factor_onto"].get<bool>());
    }
}

void check_free_product(const json& e, Checker& c) {
    const int k = e.at("k").get<int>();
    const auto rs = reidemeister_schreier(free_product_z2(k), parity_table(k));
    const Presentation s = tietze_simplify(rs.presentation);
    const auto ab = abelianization(rs.presentation);
    const int want = e.at("expect").at("free_rank").get<int>();
    c.require("kernel presentation does not simplify to a free one", s.relators.empty());
    c.equal("simplified generator count", static_cast<int>(s.generators.size()), want);
    c.equal("abelianization rank", ab.free_rank, want);
    c.require("abelianization has torsion", ab.torsion.empty());
}

}  // namespace

const json& builtin_corpus() {
    static const json c = json::parse(embedded_corpus());
    return c;
}

VerifyOutcome verify_examples(const json& corpus, const RunOptions& opt) {
    const SchemaRegistry& reg = SchemaRegistry::builtin();
    reg.validate(corpus, "worked_examples.schema.json");
    const json entry_schema = {{"$ref", "worked_examples.schema.json#/definitions/entry"}};
    SchemaRegistry local = reg;
    local.add("entry", entry_schema);

    VerifyOutcome out;
    ojson results = ojson::array();
    int passed = 0, failed = 0;
    for (std::size_t i = 0; i < corpus["examples"].size(); ++i) {
        const json& e = corpus["examples"][i];
        const std::string name = e.contains("name") && e["name"].is_string() ? e["name"].get<std::string>()
                                                                           : "examples/" + std::to_string(i);
        Checker c;
        try {
            local.validate(e, "entry");
            const std::string kind = e["kind"].get<std::string>();
            if (kind == "field") check_field(e, c);
            else if (kind == "tau_table") check_tau(e, c);
            else if (kind == "golod_shafarevich") check_gs(e, c);
            else if (kind == "recurrence") check_recurrence(e, c);
            else if (kind == "hall") check_hall(e, c, opt);
            else check_free_product(e, c);
        } catch (const std::exception& ex) {
            c.require(ex.what(), false);
        }
        ojson r;
        r["name"] = name;
        r["pass"] = c.problems().empty();
        if (!c.problems().empty()) r["failures"] = c.problems();
        (c.problems().empty() ? passed : failed) += 1;
        results.push_back(r);
    }
    out.all_passed = failed == 0;
    out.empty = results.empty();
    out.report["examples"] = results;
    out.report["passed"] = passed;
    out.report["failed"] = failed;
    if (out.empty) out.report["warning"] = "empty corpus: nothing checked";
    return out;
}

}  // namespace kll::cli
