#include "kll/traceorders.hpp"

#include "kll/error.hpp"

#include <sstream>

namespace kll {

Mat2::Mat2(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    for (const auto& x : e_)
        if (!(x.field() == e_[0].field())) throw InvalidArgument("matrix entries live in different fields");
}

Mat2 Mat2::identity(const NumberField& k) { return from_rationals(k, 1, 0, 0, 1); }

Mat2 Mat2::scalar(const FieldElement& s) {
    const FieldElement z = FieldElement::from_rational(s.field(), 0);
    return {s, z, z, s};
}

Mat2 Mat2::from_rationals(const NumberField& k, const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return {FieldElement::from_rational(k, a), FieldElement::from_rational(k, b), FieldElement::from_rational(k, c),
            FieldElement::from_rational(k, d)};
}

FieldElement Mat2::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
FieldElement Mat2::trace() const { return e_[0] + e_[3]; }

Mat2 Mat2::inverse() const {
    const FieldElement d = det();
    if (d.is_zero()) throw InvalidArgument("singular matrix");
    const FieldElement inv = d.inverse();
    return {inv * e_[3], -(inv * e_[1]), -(inv * e_[2]), inv * e_[0]};
}

bool Mat2::is_scalar() const { return e_[1].is_zero() && e_[2].is_zero() && e_[0] == e_[3]; }

bool Mat2::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.e_[0] + y.e_[0], x.e_[1] + y.e_[1], x.e_[2] + y.e_[2], x.e_[3] + y.e_[3]};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.e_[0] - y.e_[0], x.e_[1] - y.e_[1], x.e_[2] - y.e_[2], x.e_[3] - y.e_[3]};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.e_[0] * y.e_[0] + x.e_[1] * y.e_[2], x.e_[0] * y.e_[1] + x.e_[1] * y.e_[3],
            x.e_[2] * y.e_[0] + x.e_[3] * y.e_[2], x.e_[2] * y.e_[1] + x.e_[3] * y.e_[3]};
}

Mat2 operator*(const FieldElement& s, const Mat2& x) { return {s * x.e_[0], s * x.e_[1], s * x.e_[2], s * x.e_[3]}; }

std::string Mat2::to_string() const {
    std::ostringstream os;
    os << "[[" << e_[0].to_string() << ", " << e_[1].to_string() << "], [" << e_[2].to_string() << ", " << e_[3].to_string() << "]]";
    return os.str();
}

bool projectively_equal(const Mat2& x, const Mat2& y) {
    if (x.is_zero() || y.is_zero()) return x.is_zero() && y.is_zero();
    // x_ij y_kl = x_kl y_ij for all index pairs.
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const FieldElement& xi = x.at(i / 2, i % 2);
            const FieldElement& xj = x.at(j / 2, j % 2);
            const FieldElement& yi = y.at(i / 2, i % 2);
            const FieldElement& yj = y.at(j / 2, j % 2);
            if (!(xi * yj == xj * yi)) return false;
        }
    // Also rule out a zero pattern mismatch (x_i = 0 but y_i != 0).
    for (int i = 0; i < 4; ++i)
        if (x.at(i / 2, i % 2).is_zero() != y.at(i / 2, i % 2).is_zero()) return false;
    return true;
}

bool projective_involution(const Mat2& x) {
    const Mat2 sq = x * x;
    return sq.is_scalar() && !sq.is_zero() && !x.is_scalar();
}

namespace {

void require_unimodular(const Mat2& m, const char* name) {
    const FieldElement one = FieldElement::from_rational(m.field(), 1);
    if (!(m.det() == one)) throw NonUnimodular(std::string("det(") + name + ") = " + m.det().to_string() + ", expected 1");
}

}  // namespace

bool verify_trace_identities(const Mat2& a, const Mat2& b) {
    require_unimodular(a, "a");
    require_unimodular(b, "b");
    const NumberField& k = a.field();
    const Mat2 one = Mat2::identity(k);
    const Mat2 ai = a.inverse(), bi = b.inverse();
    const FieldElement ta = a.trace(), tb = b.trace(), tab = (a * b).trace();
    const bool ok1 = a + ai == ta * one;
    const bool ok2 = a * a == ta * a - one;
    const bool ok3 = a * a * b == ta * (a * b) - b;
    const bool ok4 = a * b * a == (-tb) * one + tab * a + b;
    const bool ok5 = bi * ai == tb * ai - b * ai;
    const bool ok6 = b * a + a * b == (tab - ta * tb) * one + tb * a + ta * b;
    return ok1 && ok2 && ok3 && ok4 && ok5 && ok6;
}

std::array<FieldElement, 4> coordinates(const std::array<Mat2, 4>& basis, const Mat2& m) {
    const NumberField& k = m.field();
    // Rows: the four matrix entries; columns: basis elements; last column: m.
    std::vector<std::vector<FieldElement>> sys;
    for (int e = 0; e < 4; ++e) {
        std::vector<FieldElement> row;
        for (const auto& bm : basis) row.push_back(bm.at(e / 2, e % 2));
        row.push_back(m.at(e / 2, e % 2));
        sys.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        while (piv < 4 && sys[piv][c].is_zero()) ++piv;
        if (piv == 4) throw InvalidArgument("basis matrices are linearly dependent");
        std::swap(sys[piv], sys[c]);
        const FieldElement inv = sys[c][c].inverse();
        for (auto& v : sys[c]) v = inv * v;
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == c || sys[r][c].is_zero()) continue;
            const FieldElement f = sys[r][c];
            for (std::size_t j = 0; j < 5; ++j) sys[r][j] = sys[r][j] - f * sys[c][j];
        }
    }
    const FieldElement z = FieldElement::from_rational(k, 0);
    std::array<FieldElement, 4> out{z, z, z, z};
    for (std::size_t i = 0; i < 4; ++i) out[i] = sys[i][4];
    return out;
}

ElementaryOrder build_order(const Mat2& a, const Mat2& b) {
    require_unimodular(a, "a");
    require_unimodular(b, "b");
    if (a * b == b * a) throw CommutingGenerators("a and b commute");
    for (const auto& [name, t] : {std::pair<const char*, FieldElement>{"tr(a)", a.trace()}, {"tr(b)", b.trace()}, {"tr(ab)", (a * b).trace()}})
        if (!t.is_integral()) throw NonIntegralTraces(std::string(name) + " = " + t.to_string() + " is not an algebraic integer");
    const NumberField& k = a.field();
    const std::array<Mat2, 4> basis{Mat2::identity(k), a, b, a * b};
    ElementaryOrder o{a, b, basis, {}, true};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            o.structure.push_back(coordinates(basis, basis[i] * basis[j]));
            for (const auto& c : o.structure.back()) o.all_integral = o.all_integral && c.is_integral();
        }
    return o;
}

bool order_contains(const ElementaryOrder& order, const Mat2& m) {
    for (const auto& c : coordinates(order.basis, m))
        if (!c.is_integral()) return false;
    return true;
}

bool normalizes(const ElementaryOrder& order, const Mat2& x) {
    const Mat2 xi = x.inverse();
    for (const auto& bm : order.basis)
        if (!order_contains(order, x * bm * xi) || !order_contains(order, xi * bm * x)) return false;
    return true;
}

FieldElement commutator_trace_minus_two(const Mat2& a, const Mat2& b) {
    const Mat2 c = a * b * a.inverse() * b.inverse();
    return c.trace() - FieldElement::from_rational(a.field(), 2);
}

FieldElement order_discriminant(const ElementaryOrder& order) { return commutator_trace_minus_two(order.a, order.b); }

JorgensenInvolution jorgensen_involution(const Mat2& a, const Mat2& b) {
    const Mat2 tau = a * b - b * a;
    if (tau.det().is_zero()) throw CommonFixedPoint("det(ab - ba) = 0");
    JorgensenInvolution j{tau};
    const Mat2 ti = tau.inverse();
    j.trace_zero = tau.trace().is_zero();
    j.square_scalar = (tau * tau).is_scalar();
    j.inverts_a = tau * a * ti == a.inverse();
    j.inverts_b = tau * b * ti == b.inverse();
    return j;
}

bool klein_four_relations(const Mat2& a, const Mat2& alpha, const Mat2& tau1, const Mat2& tau2) {
    if (!projective_involution(tau1)) throw RelationFailure("tau1 is not a projective involution");
    if (!projective_involution(tau2)) throw RelationFailure("tau2 is not a projective involution");
    const Mat2 p12 = tau1 * tau2, p21 = tau2 * tau1;
    if (!projectively_equal(p12, p21) || p12.is_scalar()) return false;
    const Mat2 t1i = tau1.inverse(), t2i = tau2.inverse();
    if (!projectively_equal(tau1 * a * t1i, a.inverse())) throw RelationFailure("tau1 a tau1 = a^-1");
    if (!projectively_equal(tau1 * alpha * t1i, alpha)) throw RelationFailure("tau1 alpha tau1 = alpha");
    if (!projectively_equal(tau2 * a * t2i, a)) throw RelationFailure("tau2 a tau2 = a");
    if (!projectively_equal(tau2 * alpha * t2i, alpha.inverse())) throw RelationFailure("tau2 alpha tau2 = alpha^-1");
    return true;
}

}  // namespace kll
