#include "kll/quatalg.hpp"

#include "kll/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

namespace kll {

std::string to_string(LocalStatus s) {
    switch (s) {
        case LocalStatus::Ramified: return "ramified";
        case LocalStatus::Split: return "split";
        case LocalStatus::Undecided: return "undecided";
    }
    return "?";
}

namespace {

int valuation(Integer z, std::int64_t p) {
    if (z == 0) return 1 << 20;
    int v = 0;
    const Integer P(static_cast<long>(p));
    while (z % P == 0) {
        z /= P;
        ++v;
    }
    return v;
}

// Valuation of a residue modulo p^k, capped at k.
int residue_valuation(std::int64_t r, std::int64_t p, int k) {
    if (r == 0) return k;
    int v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

struct SquareClass {
    int v = 0;         // 0 or 1
    Integer unit_num;  // p-adic unit = unit_num / unit_den
    Integer unit_den;
};

SquareClass square_class(const Rational& q, std::int64_t p) {
    const int vn = valuation(q.get_num(), p), vd = valuation(q.get_den(), p);
    const Integer P(static_cast<long>(p));
    Integer n = q.get_num(), d = q.get_den();
    for (int i = 0; i < vn; ++i) n /= P;
    for (int i = 0; i < vd; ++i) d /= P;
    // a = p^(vn - vd) u; multiplying by p^(2k) keeps the square class.
    const int v = ((vn - vd) % 2 + 2) % 2;
    return {v, n, d};
}

std::int64_t residue(const SquareClass& c, std::int64_t p, std::int64_t m) {
    const Integer M(static_cast<long>(m));
    Integer n, d;
    mpz_fdiv_r(n.get_mpz_t(), c.unit_num.get_mpz_t(), M.get_mpz_t());
    mpz_fdiv_r(d.get_mpz_t(), c.unit_den.get_mpz_t(), M.get_mpz_t());
    std::int64_t r = static_cast<std::int64_t>(static_cast<__int128>(n.get_si()) * mod_inverse(d.get_si(), m) % m);
    if (c.v == 1) r = r * p % m;
    return r;
}

// For each residue r mod m = p^k: smallest v(z) over roots of z^2 = r, or -1.
const std::vector<int>& min_root_valuation(std::int64_t p, int k) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, int>, std::vector<int>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
    std::int64_t m = 1;
    for (int i = 0; i < k; ++i) m *= p;
    std::vector<int> t(static_cast<std::size_t>(m), -1);
    for (std::int64_t z = 0; z < m; ++z) {
        const auto r = static_cast<std::size_t>(static_cast<__int128>(z) * z % m);
        const int v = residue_valuation(z, p, k);
        if (t[r] < 0 || v < t[r]) t[r] = v;
    }
    return cache.emplace(std::make_pair(p, k), std::move(t)).first->second;
}

// Search for a Hensel certificate at level j: a primitive solution modulo
// p^(2j+1) at which some partial derivative has valuation <= j.
bool certified_isotropic(const SquareClass& a, const SquareClass& b, std::int64_t p, int j) {
    const int k = 2 * j + 1;
    std::int64_t m = 1;
    for (int i = 0; i < k; ++i) m *= p;
    const std::int64_t ar = residue(a, p, m), br = residue(b, p, m);
    const int v2 = p == 2 ? 1 : 0;
    const auto& roots = min_root_valuation(p, k);
    auto check = [&](std::int64_t x, std::int64_t y) {
        const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(ar) * x % m * x + static_cast<__int128>(br) * y % m * y) % m);
        const int zv = roots[static_cast<std::size_t>(r)];
        if (zv < 0) return false;
        const int dx = x == 0 ? k : v2 + a.v + residue_valuation(x, p, k);
        const int dy = y == 0 ? k : v2 + b.v + residue_valuation(y, p, k);
        return std::min({dx, dy, v2 + zv}) <= j;
    };
    // x a unit, scaled to 1.
    for (std::int64_t y = 0; y < m; ++y)
        if (check(1, y)) return true;
    // x divisible by p, y = 1.
    for (std::int64_t x = 0; x < m; x += p)
        if (check(x, 1)) return true;
    // x, y divisible by p forces z to be a unit, impossible since a, b are integral.
    return false;
}

}  // namespace

LocalStatus hilbert_symbol_qp(const Rational& a, const Rational& b, std::int64_t p) {
    if (a == 0 || b == 0) throw InvalidArgument("Hilbert symbol entries must be nonzero");
    if (p == kRealPlace) return (a < 0 && b < 0) ? LocalStatus::Ramified : LocalStatus::Split;
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (p > 3037000499LL) throw TooLargeForExact("prime too large for the residue search");
    const SquareClass ca = square_class(a, p), cb = square_class(b, p);
    const int jmax = p == 2 ? 2 : 1;
    for (int j = 0; j <= jmax; ++j)
        if (certified_isotropic(ca, cb, p, j)) return LocalStatus::Split;
    return LocalStatus::Ramified;
}

LocalStatus base_change_status(const Rational& a, const Rational& b, const PrimeIdeal& prime) {
    if (hilbert_symbol_qp(a, b, prime.rational_prime) == LocalStatus::Split) return LocalStatus::Split;
    return prime.local_degree() % 2 == 1 ? LocalStatus::Ramified : LocalStatus::Split;
}

QuaternionAlgebra::QuaternionAlgebra(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.is_zero() || b_.is_zero()) throw InvalidArgument("Hilbert symbol entries must be nonzero");
    if (!(a_.field() == b_.field())) throw InvalidArgument("Hilbert symbol entries live in different fields");
}

QuaternionAlgebra QuaternionAlgebra::over_q(const Rational& a, const Rational& b) {
    NumberField q(QPoly::x());
    return {FieldElement::from_rational(q, a), FieldElement::from_rational(q, b)};
}

int RamificationReport::finite_ramified() const {
    return static_cast<int>(std::count_if(finite.begin(), finite.end(), [](const auto& f) { return f.status == LocalStatus::Ramified; }));
}

int RamificationReport::undecided() const {
    return static_cast<int>(std::count_if(finite.begin(), finite.end(), [](const auto& f) { return f.status == LocalStatus::Undecided; }));
}

std::vector<std::int64_t> prime_factors(Integer n) {
    n = abs(n);
    if (n == 0) throw InvalidArgument("prime factors of zero");
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d <= 1'000'000 && n > 1; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0 || !n.fits_slong_p())
            throw TooLargeForExact("cannot factor " + n.get_str());
        out.push_back(n.get_si());
    }
    return out;
}

RamificationReport ramification(const QuaternionAlgebra& algebra) {
    RamificationReport rep;
    const NumberField& k = algebra.base_field();
    const bool rational = algebra.a().is_rational() && algebra.b().is_rational();

    // Real places: ramified iff both entries are negative at the embedding.
    rep.real_places = k.signature().r1;
    if (rational) {
        if (algebra.a().rational_value() < 0 && algebra.b().rational_value() < 0) rep.real_places_ramified = rep.real_places;
    } else {
        for (const auto& [lo, hi] : isolate_real_roots(k.min_poly(), Rational(1))) {
            const int sa = sign_at_root(k.min_poly(), algebra.a().as_poly(), lo, hi);
            const int sb = sign_at_root(k.min_poly(), algebra.b().as_poly(), lo, hi);
            if (sa < 0 && sb < 0) ++rep.real_places_ramified;
        }
    }

    std::set<std::int64_t> candidates{2};
    for (const auto& e : {algebra.a(), algebra.b()}) {
        const Rational n = e.norm();
        for (auto p : prime_factors(n.get_num())) candidates.insert(p);
        for (auto p : prime_factors(n.get_den())) candidates.insert(p);
    }
    for (std::int64_t p : candidates) {
        std::vector<PrimeIdeal> primes;
        try {
            primes = split_prime(k, p);
        } catch (const NonMonogenicPrime&) {
            PrimeIdeal unknown;
            unknown.rational_prime = p;
            unknown.residue_degree = 0;
            unknown.ramification_index = 0;
            unknown.local_factor = FpPoly(p, {});
            rep.finite.push_back({unknown, LocalStatus::Undecided});
            continue;
        }
        for (auto& pr : primes) {
            LocalStatus st = rational ? base_change_status(algebra.a().rational_value(), algebra.b().rational_value(), pr)
                                      : LocalStatus::Undecided;
            rep.finite.push_back({std::move(pr), st});
        }
    }
    rep.parity_consistent = rep.undecided() > 0 || (rep.real_places_ramified + rep.finite_ramified()) % 2 == 0;
    return rep;
}

// ----------------------------------------------------------------------------

QPoly cyclotomic_polynomial(int n) {
    if (n < 1) throw InvalidArgument("cyclotomic index must be positive");
    QPoly num = QPoly::monomial(Rational(1), static_cast<std::size_t>(n)) - QPoly::constant(Rational(1));
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = divmod(num, cyclotomic_polynomial(d)).first;
    return num;
}

QPoly min_poly_2cos(int n) {
    if (n < 3) throw InvalidArgument("n must be at least 3");
    const QPoly phi = cyclotomic_polynomial(n);
    const int m = phi.degree() / 2;
    // Phi_n(x) / x^m = c_m + sum_k c_{m+k} (x^k + x^-k), and x^k + x^-k = D_k(y).
    QPoly result = QPoly::constant(phi.coeff(static_cast<std::size_t>(m)));
    QPoly d_prev = QPoly::constant(Rational(2)), d_cur = QPoly::x();
    for (int k = 1; k <= m; ++k) {
        result = result + phi.coeff(static_cast<std::size_t>(m + k)) * d_cur;
        QPoly d_next = QPoly::x() * d_cur - d_prev;
        d_prev = std::move(d_cur);
        d_cur = std::move(d_next);
    }
    // Numerical check against the root at extended precision.
    const long double pi = std::acos(-1.0L);
    const long double y = 2.0L * std::cos(2.0L * pi / static_cast<long double>(n));
    long double acc = 0.0L, scale = 0.0L;
    for (int i = result.degree(); i >= 0; --i) {
        const long double c = result.coeff(static_cast<std::size_t>(i)).get_d();
        acc = acc * y + c;
        scale = scale * std::fabs(y) + std::fabs(c);
    }
    if (std::fabs(acc) > 1e-15L * (scale + 1.0L)) throw Error("minimal polynomial of 2cos(2pi/" + std::to_string(n) + ") failed the root check");
    return result;
}

TauN tau_n(int n) {
    QPoly m = min_poly_2cos(n);
    NumberField field(m);
    FieldElement y = FieldElement::generator(field);
    FieldElement tau = y * y - FieldElement::from_rational(field, Rational(4));
    QPoly tmp = tau.minimal_polynomial();
    return {n, std::move(m), field, tau, std::move(tmp)};
}

Rational tau_n_norm(int n) {
    const QPoly m = min_poly_2cos(n);
    return resultant(m, QPoly::from_ints({-4, 0, 1}));
}

DihedralReport dihedral_ramification_analysis(int n) {
    DihedralReport r{n, tau_n(n)};
    r.norm = tau_n_norm(n);
    r.is_unit = abs(r.norm) == 1;
    auto ps = prime_factors(Integer(n));
    if (ps.size() == 1) {
        int t = 0;
        for (int v = n; v > 1; v /= static_cast<int>(ps[0])) ++t;
        r.prime_power = std::make_pair(ps[0], t);
    }
    r.norm_case = n == 4 ? 3 : (r.prime_power ? 2 : 1);
    r.rule_applies = n % 2 == 1 || n > 4;
    if (r.rule_applies) {
        if (r.prime_power) {
            r.rule_prediction = "norm " + std::to_string(r.prime_power->first);
            r.rule_consistent = abs(r.norm) == r.prime_power->first;
        } else {
            r.rule_prediction = "unit";
            r.rule_consistent = r.is_unit;
        }
        if (!r.rule_consistent)
            r.note = "computed |N(tau_" + std::to_string(n) + ")| = " + to_string(abs(r.norm)) + " disagrees with the predicted " + r.rule_prediction;
    } else {
        r.rule_prediction = "n/a";
    }
    if (!r.is_unit) r.candidate_primes = prime_factors(r.norm.get_num());
    return r;
}

std::string to_string(ClozelResult::Verdict v) {
    switch (v) {
        case ClozelResult::Verdict::Satisfied: return "satisfied";
        case ClozelResult::Verdict::Violated: return "violated";
        case ClozelResult::Verdict::Undecided: return "undecided";
    }
    return "?";
}

ClozelResult clozel_hypothesis(const NumberField& field, const std::vector<PrimeIdeal>& finite_ramification) {
    ClozelResult out;
    bool undecided = false;
    for (const auto& pr : finite_ramification) {
        int total = 0;
        for (const auto& q : split_prime(field, pr.rational_prime)) total += q.local_degree();
        if (total != field.degree()) throw InvalidArgument("prime data inconsistent with the field");
        switch (local_quadratic_subextension(pr)) {
            case LocalQuadratic::Contains:
                out.verdict = ClozelResult::Verdict::Violated;
                out.witness = pr;
                return out;
            case LocalQuadratic::Undecided: undecided = true; break;
            case LocalQuadratic::DoesNotContain: break;
        }
    }
    if (undecided) out.verdict = ClozelResult::Verdict::Undecided;
    return out;
}

}  // namespace kll
