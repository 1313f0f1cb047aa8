#include "kll/numfield.hpp"

#include "kll/error.hpp"
#include "kll/linalg.hpp"

#include <algorithm>
#include <set>

namespace kll {

namespace {

// Integer roots of a monic integer polynomial divide the constant term.
bool has_integer_root(const QPoly& f) {
    const Integer c0 = f.coeff(0).get_num();
    if (c0 == 0) return true;
    const Integer a = abs(c0);
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 40) return false;  // too large to sweep divisors
    const unsigned long long n = a.get_ui();
    for (unsigned long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        for (unsigned long long cand : {d, n / d})
            for (int s : {1, -1}) {
                Rational r(static_cast<long>(cand) * s);
                if (f.eval(r) == 0) return true;
            }
    }
    return false;
}

IrreducibilityCertificate certify(const QPoly& f) {
    const int d = f.degree();
    if (d == 1) return {true, "degree-1"};
    if (gcd(f, f.derivative()).degree() > 0) throw ReduciblePolynomial(f.to_string() + " has a repeated factor");
    if (has_integer_root(f)) throw ReduciblePolynomial(f.to_string() + " has a rational root");
    if (d <= 3) return {true, "rational-root"};
    // Degrees d' with 0 < d' < d that a rational factor could still have.
    std::set<int> possible;
    for (int k = 1; k < d; ++k) possible.insert(k);
    std::string used;
    for (std::int64_t p = 2; p <= 100; ++p) {
        if (!is_prime(p)) continue;
        FpPoly fp = FpPoly::reduce(f, p);
        auto fac = factor(fp);
        bool squarefree = std::all_of(fac.begin(), fac.end(), [](const auto& pr) { return pr.second == 1; });
        if (!squarefree) continue;
        if (fac.size() == 1) return {true, "mod-p:" + std::to_string(p)};
        std::set<int> sums{0};
        for (const auto& [g, m] : fac) {
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + g.degree());
            sums = std::move(next);
        }
        std::set<int> keep;
        for (int k : possible)
            if (sums.count(k) != 0) keep.insert(k);
        if (keep.size() < possible.size()) used += (used.empty() ? "" : ",") + std::to_string(p);
        possible = std::move(keep);
        if (possible.empty()) return {true, "degree-patterns:" + used};
    }
    return {false, "unverified"};
}

}  // namespace

NumberField::NumberField(const QPoly& min_poly) {
    if (min_poly.degree() < 1) throw InvalidArgument("defining polynomial must have degree >= 1");
    if (!min_poly.is_monic()) throw InvalidArgument("defining polynomial must be monic");
    if (!min_poly.has_integer_coeffs()) throw InvalidArgument("defining polynomial must have integer coefficients");
    auto data = std::make_shared<Data>();
    data->f = min_poly;
    data->cert = certify(min_poly);
    const int r1 = SturmSequence(min_poly).count_real();
    data->sig = {r1, (min_poly.degree() - r1) / 2};
    data->disc = discriminant(min_poly).get_num();
    data_ = std::move(data);
}

NumberField NumberField::from_coefficients(const std::vector<Integer>& constant_first) {
    return NumberField(QPoly::from_integers(constant_first));
}

Signature signature(const NumberField& field) { return field.signature(); }
Integer poly_discriminant(const NumberField& field) { return field.poly_discriminant(); }

bool dedekind_p_maximal(const QPoly& f, std::int64_t p) {
    const FpPoly fp = FpPoly::reduce(f, p);
    FpPoly g(p, {1});
    for (const auto& [gi, e] : factor(fp)) g = g * gi;
    const FpPoly h = divmod(fp, g).first;
    const QPoly gl = g.lift(), hl = h.lift();
    const QPoly diff = f - gl * hl;
    const QPoly big_f = Rational(1, static_cast<long>(p)) * diff;
    if (!big_f.has_integer_coeffs()) throw Error("Dedekind criterion: f - gh is not divisible by p");
    const FpPoly fbar = FpPoly::reduce(big_f, p);
    return gcd(gcd(fbar, g), h).degree() == 0;
}

std::vector<PrimeIdeal> split_prime(const NumberField& field, std::int64_t p) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    const Integer P(static_cast<long>(p));
    if (field.poly_discriminant() % (P * P) == 0 && !dedekind_p_maximal(field.min_poly(), p))
        throw NonMonogenicPrime("Z[theta] is not " + std::to_string(p) + "-maximal; supply splitting data manually");
    std::vector<PrimeIdeal> out;
    for (auto& [g, e] : factor(FpPoly::reduce(field.min_poly(), p))) {
        PrimeIdeal pr;
        pr.rational_prime = p;
        pr.residue_degree = g.degree();
        pr.ramification_index = e;
        pr.local_factor = g;
        out.push_back(std::move(pr));
    }
    return out;
}

std::string to_string(LocalQuadratic v) {
    switch (v) {
        case LocalQuadratic::Contains: return "contains";
        case LocalQuadratic::DoesNotContain: return "does_not_contain";
        case LocalQuadratic::Undecided: return "undecided";
    }
    return "?";
}

LocalQuadratic local_quadratic_subextension(const PrimeIdeal& prime) {
    const int e = prime.ramification_index, f = prime.residue_degree;
    if (f % 2 == 0) return LocalQuadratic::Contains;
    if (e % 2 == 0 && prime.rational_prime != 2) return LocalQuadratic::Contains;
    if ((e * f) % 2 == 1) return LocalQuadratic::DoesNotContain;
    return LocalQuadratic::Undecided;
}

// ----------------------------------------------------------------------------

FieldElement::FieldElement(NumberField field, std::vector<Rational> coeffs) : field_(std::move(field)) {
    const auto d = static_cast<std::size_t>(field_.degree());
    QPoly reduced = QPoly(std::move(coeffs)) % field_.min_poly();
    c_ = reduced.coeffs();
    c_.resize(d);
}

FieldElement FieldElement::from_rational(const NumberField& field, const Rational& q) { return FieldElement(field, {q}); }

FieldElement FieldElement::generator(const NumberField& field) { return FieldElement(field, {Rational(0), Rational(1)}); }

FieldElement FieldElement::from_poly(const NumberField& field, const QPoly& p) { return FieldElement(field, p.coeffs()); }

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& q) { return q == 0; });
}

Rational FieldElement::rational_value() const {
    if (!is_rational()) throw InvalidArgument("field element " + to_string() + " is not rational");
    return c_[0];
}

namespace {

void require_same(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field())) throw InvalidArgument("field elements live in different fields");
}

}  // namespace

FieldElement FieldElement::operator-() const { return Rational(-1) * *this; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    std::vector<Rational> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] + b.c_[i];
    return FieldElement(a.field_, std::move(r));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    std::vector<Rational> r(a.c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.c_[i] - b.c_[i];
    return FieldElement(a.field_, std::move(r));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same(a, b);
    return FieldElement(a.field_, (a.as_poly() * b.as_poly()).coeffs());
}

FieldElement operator*(const Rational& s, const FieldElement& a) {
    std::vector<Rational> r = a.c_;
    for (auto& c : r) c *= s;
    return FieldElement(a.field_, std::move(r));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw InvalidArgument("inverse of zero");
    auto bz = extended_gcd(as_poly(), field_.min_poly());
    if (bz.g.degree() != 0) throw ReduciblePolynomial("element shares a factor with the defining polynomial");
    return FieldElement(field_, bz.s.coeffs());
}

std::vector<std::vector<Rational>> FieldElement::multiplication_matrix() const {
    const auto d = static_cast<std::size_t>(field_.degree());
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
    FieldElement basis = from_rational(field_, Rational(1));
    const FieldElement theta = generator(field_);
    for (std::size_t j = 0; j < d; ++j) {
        FieldElement img = *this * basis;
        for (std::size_t i = 0; i < d; ++i) m[i][j] = img.c_[i];
        basis = basis * theta;
    }
    return m;
}

Rational FieldElement::norm() const { return determinant(multiplication_matrix()); }

Rational FieldElement::norm_by_resultant() const { return resultant(field_.min_poly(), as_poly()); }

Rational FieldElement::trace() const {
    auto m = multiplication_matrix();
    Rational t(0);
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

QPoly FieldElement::characteristic_polynomial() const { return QPoly(kll::characteristic_polynomial(multiplication_matrix())); }

QPoly FieldElement::minimal_polynomial() const { return squarefree_part(characteristic_polynomial()); }

bool FieldElement::is_integral() const { return characteristic_polynomial().has_integer_coeffs(); }

std::string FieldElement::to_string() const { return as_poly().to_string("t"); }

}  // namespace kll
