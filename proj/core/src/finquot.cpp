#include "kll/finquot.hpp"

#include "kll/error.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace kll {

namespace {

std::int64_t pmod(std::int64_t a, std::int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint64_t x : v) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

void charge(std::uint64_t count, const Budget& budget, const char* what) {
    if (count > budget.max_group_order)
        throw BudgetExceeded(std::string(what) + " exceeds the group-order cap of " +
                             std::to_string(budget.max_group_order));
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteRing

FiniteRing FiniteRing::integers_mod(std::int64_t m) {
    if (m < 2) throw InvalidArgument("Z/m needs m >= 2, got " + std::to_string(m));
    if (m > 55000) throw InvalidArgument("modulus too large for matrix encoding: " + std::to_string(m));
    FiniteRing r;
    r.p_ = m;
    r.f_ = 1;
    r.size_ = m;
    r.field_ = is_prime(m);
    r.extension_ = false;
    return r;
}

FiniteRing FiniteRing::galois(const FpPoly& g) {
    const std::int64_t p = g.modulus();
    if (!is_prime(p)) throw InvalidArgument("characteristic must be prime");
    if (g.degree() < 1) throw InvalidArgument("defining polynomial must have positive degree");
    if (g.leading() != 1) throw InvalidArgument("defining polynomial must be monic");
    if (!is_irreducible(g)) throw ReduciblePolynomial(g.to_string("t") + " is reducible mod " + std::to_string(p));
    FiniteRing r;
    r.p_ = p;
    r.f_ = g.degree();
    Integer q = ipow(Integer(static_cast<long>(p)), static_cast<unsigned long>(r.f_));
    if (q > 55000) throw InvalidArgument("field too large for matrix encoding: q = " + q.get_str());
    r.size_ = q.get_si();
    r.field_ = true;
    r.extension_ = true;
    r.g_ = g;
    if (r.f_ > 1 && r.size_ <= 1024) {
        r.mul_table_.assign(static_cast<std::size_t>(r.size_ * r.size_), 0);
        for (std::int64_t a = 0; a < r.size_; ++a) {
            const FpPoly pa = r.to_poly(a);
            for (std::int64_t b = a; b < r.size_; ++b) {
                const auto v = static_cast<std::int32_t>(r.from_poly(pa * r.to_poly(b)));
                r.mul_table_[static_cast<std::size_t>(a * r.size_ + b)] = v;
                r.mul_table_[static_cast<std::size_t>(b * r.size_ + a)] = v;
            }
        }
    }
    return r;
}

FiniteRing FiniteRing::field(std::int64_t p, int degree) {
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (degree < 1) throw InvalidArgument("degree must be positive");
    if (degree == 1) return galois(FpPoly(p, {0, 1}));
    // lowest monic irreducible, coefficients read as base-p digits
    std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = 1;
    for (;;) {
        FpPoly g(p, c);
        if (is_irreducible(g)) return galois(g);
        std::size_t i = 0;
        while (i < c.size() - 1 && ++c[i] == p) c[i++] = 0;
        if (i == c.size() - 1) break;
    }
    throw InvalidArgument("no irreducible polynomial found");
}

std::int64_t FiniteRing::add(std::int64_t a, std::int64_t b) const {
    if (!extension_ || f_ == 1) return pmod(a + b, p_);
    std::int64_t r = 0, scale = 1;
    for (int i = 0; i < f_; ++i) {
        r += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

std::int64_t FiniteRing::neg(std::int64_t a) const {
    if (!extension_ || f_ == 1) return pmod(-a, p_);
    std::int64_t r = 0, scale = 1;
    for (int i = 0; i < f_; ++i) {
        r += pmod(-(a % p_), p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return r;
}

std::int64_t FiniteRing::sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

std::int64_t FiniteRing::mul(std::int64_t a, std::int64_t b) const {
    if (!extension_ || f_ == 1) return mulmod(a, b, p_);
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a * size_ + b)];
    return from_poly(to_poly(a) * to_poly(b));
}

std::int64_t FiniteRing::from_int(std::int64_t v) const {
    return pmod(v, p_);
}

std::int64_t FiniteRing::from_poly(const FpPoly& v) const {
    if (!extension_) throw InvalidArgument("Z/m has no polynomial generator");
    if (v.modulus() != p_) throw InvalidArgument("characteristic mismatch");
    const FpPoly r = v % g_;
    std::int64_t code = 0;
    for (int i = r.degree(); i >= 0; --i) code = code * p_ + r.coeff(static_cast<std::size_t>(i));
    return code;
}

FpPoly FiniteRing::to_poly(std::int64_t a) const {
    std::vector<std::int64_t> c;
    for (int i = 0; i < f_; ++i) {
        c.push_back(a % p_);
        a /= p_;
    }
    return FpPoly(p_, c);
}

std::vector<std::int64_t> FiniteRing::additive_basis() const {
    std::vector<std::int64_t> out;
    std::int64_t v = 1;
    for (int i = 0; i < f_; ++i) {
        out.push_back(v);
        v *= p_;
    }
    return out;
}

std::string FiniteRing::describe() const {
    if (!extension_) return "Z/" + std::to_string(p_);
    if (f_ == 1) return "F_" + std::to_string(p_);
    return "F_" + std::to_string(size_) + " = F_" + std::to_string(p_) + "[t]/(" + g_.to_string("t") + ")";
}

// ---------------------------------------------------------------------------
// MatrixSpace

MatrixSpace::MatrixSpace(FiniteRing ring, bool projective) : ring_(std::move(ring)), projective_(projective) {}

Mat2F MatrixSpace::make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) const {
    return normalize(Mat2F{{ring_.from_int(a), ring_.from_int(b), ring_.from_int(c), ring_.from_int(d)}});
}

Mat2F MatrixSpace::identity() const { return normalize(Mat2F{{1, 0, 0, 1}}); }

Mat2F MatrixSpace::mul(const Mat2F& x, const Mat2F& y) const {
    const FiniteRing& r = ring_;
    Mat2F z{{r.add(r.mul(x.e[0], y.e[0]), r.mul(x.e[1], y.e[2])), r.add(r.mul(x.e[0], y.e[1]), r.mul(x.e[1], y.e[3])),
             r.add(r.mul(x.e[2], y.e[0]), r.mul(x.e[3], y.e[2])), r.add(r.mul(x.e[2], y.e[1]), r.mul(x.e[3], y.e[3]))}};
    return normalize(z);
}

Mat2F MatrixSpace::inverse(const Mat2F& x) const {
    return normalize(Mat2F{{x.e[3], ring_.neg(x.e[1]), ring_.neg(x.e[2]), x.e[0]}});
}

std::int64_t MatrixSpace::det(const Mat2F& x) const {
    return ring_.sub(ring_.mul(x.e[0], x.e[3]), ring_.mul(x.e[1], x.e[2]));
}

Mat2F MatrixSpace::normalize(const Mat2F& x) const {
    if (!projective_) return x;
    Mat2F m{{ring_.neg(x.e[0]), ring_.neg(x.e[1]), ring_.neg(x.e[2]), ring_.neg(x.e[3])}};
    return code(m) < code(x) ? m : x;
}

std::uint64_t MatrixSpace::code(const Mat2F& x) const {
    const auto n = static_cast<std::uint64_t>(ring_.size());
    std::uint64_t c = 0;
    for (std::int64_t v : x.e) c = c * n + static_cast<std::uint64_t>(v);
    return c;
}

Mat2F MatrixSpace::decode(std::uint64_t code) const {
    const auto n = static_cast<std::uint64_t>(ring_.size());
    Mat2F x;
    for (int i = 3; i >= 0; --i) {
        x.e[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(code % n);
        code /= n;
    }
    return x;
}

std::vector<Mat2F> MatrixSpace::sl2_generators() const {
    std::vector<Mat2F> gens;
    for (std::int64_t b : ring_.additive_basis()) {
        gens.push_back(normalize(Mat2F{{1, b, 0, 1}}));
        gens.push_back(normalize(Mat2F{{1, 0, b, 1}}));
    }
    return gens;
}

Integer MatrixSpace::field_group_order() const {
    if (!ring_.is_field()) throw InvalidArgument(ring_.describe() + " is not a field");
    const Integer q(static_cast<long>(ring_.size()));
    Integer n = q * (q * q - 1);
    if (projective_ && ring_.characteristic() != 2) n /= 2;
    return n;
}

std::string MatrixSpace::describe() const {
    return std::string(projective_ ? "PSL" : "SL") + "(2, " + ring_.describe() + ")";
}

// ---------------------------------------------------------------------------
// FiniteMatrixGroup

FiniteMatrixGroup::FiniteMatrixGroup(MatrixSpace space, std::vector<Mat2F> generators, const Budget& budget)
    : space_(std::move(space)), gens_(std::move(generators)) {
    for (auto& g : gens_) {
        for (std::int64_t v : g.e)
            if (v < 0 || v >= space_.ring().size()) throw InvalidArgument("matrix entry out of range");
        if (space_.det(g) != 1) throw InvalidArgument("generator has determinant != 1 in " + space_.ring().describe());
        g = space_.normalize(g);
    }
    const Mat2F id = space_.identity();
    std::unordered_set<std::uint64_t> seen{space_.code(id)};
    std::vector<Mat2F> frontier{id};
    std::size_t head = 0;
    while (head < frontier.size()) {
        const Mat2F x = frontier[head++];
        for (const Mat2F& g : gens_) {
            Mat2F y = space_.mul(x, g);
            if (seen.insert(space_.code(y)).second) {
                charge(seen.size(), budget, "matrix group closure");
                frontier.push_back(y);
            }
        }
    }
    codes_.assign(seen.begin(), seen.end());
    std::sort(codes_.begin(), codes_.end());
}

FiniteMatrixGroup FiniteMatrixGroup::full(const MatrixSpace& space, const Budget& budget) {
    return FiniteMatrixGroup(space, space.sl2_generators(), budget);
}

std::int64_t FiniteMatrixGroup::index_of(const Mat2F& x) const {
    const std::uint64_t c = space_.code(space_.normalize(x));
    auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
    if (it == codes_.end() || *it != c) return -1;
    return it - codes_.begin();
}

std::vector<std::uint32_t> FiniteMatrixGroup::right_multiplication(const Mat2F& g) const {
    std::vector<std::uint32_t> tab(codes_.size());
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        const std::int64_t j = index_of(space_.mul(element(i), g));
        if (j < 0) throw InvalidArgument("multiplier is not in the group");
        tab[i] = static_cast<std::uint32_t>(j);
    }
    return tab;
}

Mat2F random_element(const FiniteMatrixGroup& g, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    return g.element(pick(rng));
}

// ---------------------------------------------------------------------------
// Reduction

ReductionResult reduce_mod_prime(const std::vector<Mat2>& gens, const PrimeIdeal& prime, bool projective) {
    const std::int64_t p = prime.rational_prime;
    if (!is_prime(p)) throw InvalidArgument("prime ideal over non-prime " + std::to_string(p));
    FiniteRing ring = FiniteRing::galois(prime.local_factor.monic());
    MatrixSpace space(ring, projective);
    const Integer pz(static_cast<long>(p));
    auto reduce_entry = [&](const FieldElement& x) {
        std::vector<std::int64_t> c;
        for (const Rational& q : x.coeffs()) {
            if (q.get_den() % pz == 0)
                throw DenominatorNotCoprime("coefficient " + to_string(q) + " has " + std::to_string(p) +
                                            " in its denominator");
            Integer num = q.get_num() % pz, den = q.get_den() % pz;
            if (num < 0) num += pz;
            c.push_back(mulmod(num.get_si(), mod_inverse(den.get_si(), p), p));
        }
        return ring.from_poly(FpPoly(p, c));
    };
    ReductionResult out{space, {}};
    for (const Mat2& m : gens) {
        Mat2F x{{reduce_entry(m.at(0, 0)), reduce_entry(m.at(0, 1)), reduce_entry(m.at(1, 0)), reduce_entry(m.at(1, 1))}};
        if (space.det(x) != 1) throw InvalidArgument("reduced matrix does not have determinant one");
        out.images.push_back(space.normalize(x));
    }
    return out;
}

Mat2F evaluate_word(const MatrixSpace& space, const std::vector<Mat2F>& images, const Word& w) {
    Mat2F acc = space.identity();
    for (int letter : w) {
        const auto g = static_cast<std::size_t>(std::abs(letter) - 1);
        if (g >= images.size()) throw InvalidArgument("word mentions generator beyond the image list");
        acc = space.mul(acc, letter > 0 ? images[g] : space.inverse(images[g]));
    }
    return acc;
}

void check_relators(const Presentation& pres, const MatrixSpace& space, const std::vector<Mat2F>& images) {
    if (images.size() != pres.generators.size()) throw InvalidArgument("one image per generator is required");
    for (std::size_t r = 0; r < pres.relators.size(); ++r)
        if (!space.is_identity(evaluate_word(space, images, pres.relators[r])))
            throw RelatorViolated("relator " + pres.word_to_string(pres.relators[r]) + " maps to " +
                                  "a nontrivial element");
}

// ---------------------------------------------------------------------------
// Products

ProductSpace::ProductSpace(std::vector<MatrixSpace> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("product needs at least one factor");
}

ProductSpace ProductSpace::psl2_primes(const std::vector<std::int64_t>& primes) {
    std::vector<MatrixSpace> f;
    for (std::int64_t p : primes) f.emplace_back(FiniteRing::field(p), true);
    return ProductSpace(std::move(f));
}

ProductElement ProductSpace::identity() const {
    ProductElement e;
    for (const auto& f : factors_) e.push_back(f.identity());
    return e;
}

ProductElement ProductSpace::mul(const ProductElement& x, const ProductElement& y) const {
    ProductElement z(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) z[i] = factors_[i].mul(x[i], y[i]);
    return z;
}

ProductElement ProductSpace::inverse(const ProductElement& x) const {
    ProductElement z(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) z[i] = factors_[i].inverse(x[i]);
    return z;
}

ProductElement ProductSpace::normalize(const ProductElement& x) const {
    ProductElement z(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) z[i] = factors_[i].normalize(x[i]);
    return z;
}

bool ProductSpace::is_identity(const ProductElement& x) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i].is_identity(x[i])) return false;
    return true;
}

std::vector<std::uint64_t> ProductSpace::key(const ProductElement& x) const {
    std::vector<std::uint64_t> k(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) k[i] = factors_[i].code(factors_[i].normalize(x[i]));
    return k;
}

void ProductSpace::check(const ProductElement& x) const {
    if (x.size() != factors_.size())
        throw InvalidArgument("element has " + std::to_string(x.size()) + " slots, product has " +
                              std::to_string(factors_.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::int64_t v : x[i].e)
            if (v < 0 || v >= factors_[i].ring().size()) throw InvalidArgument("matrix entry out of range");
        if (factors_[i].det(x[i]) != 1) throw InvalidArgument("slot " + std::to_string(i) + " has determinant != 1");
    }
}

std::vector<ProductElement> product_closure(const ProductSpace& space, const std::vector<ProductElement>& gens,
                                            const Budget& budget) {
    std::vector<ProductElement> g;
    for (const auto& x : gens) {
        space.check(x);
        g.push_back(space.normalize(x));
    }
    const ProductElement id = space.identity();
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> seen{space.key(id)};
    std::vector<ProductElement> out{id};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (const auto& s : g) {
            ProductElement y = space.mul(out[head], s);
            if (seen.insert(space.key(y)).second) {
                charge(seen.size(), budget, "product closure");
                out.push_back(std::move(y));
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [&](const ProductElement& a, const ProductElement& b) { return space.key(a) < space.key(b); });
    return out;
}

namespace {

// Orbit size of 0 under the given permutation tables of one set.
std::uint64_t orbit_size(std::size_t n, const std::vector<const std::vector<std::uint32_t>*>& tabs) {
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (const auto* t : tabs) {
            const std::uint32_t y = (*t)[queue[h]];
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    return queue.size();
}

}  // namespace

SurjectivityReport product_surjectivity(const ProductSpace& space, const std::vector<ProductElement>& gens,
                                        const Budget& budget) {
    for (const auto& x : gens) space.check(x);
    const std::size_t n = space.size();
    SurjectivityReport rep;
    rep.product_order = 1;
    std::vector<FiniteMatrixGroup> groups;
    for (const auto& f : space.factors()) {
        groups.push_back(FiniteMatrixGroup::full(f, budget));
        rep.factor_orders.push_back(groups.back().order());
        rep.product_order *= static_cast<unsigned long>(groups.back().order());
    }
    if (rep.product_order > Integer(static_cast<unsigned long>(budget.max_group_order)))
        throw BudgetExceeded("product order " + rep.product_order.get_str() + " exceeds the group-order cap of " +
                             std::to_string(budget.max_group_order));

    // tabs[i][k]: right multiplication by slot i of generator k, identity at index 0 after relabel
    std::vector<std::vector<std::vector<std::uint32_t>>> tabs(n);
    std::vector<std::uint32_t> id_index(n);
    for (std::size_t i = 0; i < n; ++i) {
        id_index[i] = static_cast<std::uint32_t>(groups[i].index_of(space.factors()[i].identity()));
        for (const auto& g : gens) tabs[i].push_back(groups[i].right_multiplication(g[i]));
        // per-factor image: relabel so the identity sits at 0
        const std::size_t m = groups[i].order();
        std::vector<std::uint32_t> relabel(m), back(m);
        std::iota(relabel.begin(), relabel.end(), 0U);
        std::swap(relabel[0], relabel[id_index[i]]);
        for (std::size_t j = 0; j < m; ++j) back[relabel[j]] = static_cast<std::uint32_t>(j);
        std::vector<std::vector<std::uint32_t>> shifted;
        std::vector<const std::vector<std::uint32_t>*> ptrs;
        for (const auto& t : tabs[i]) {
            std::vector<std::uint32_t> s(m);
            for (std::size_t j = 0; j < m; ++j) s[back[j]] = back[t[j]];
            shifted.push_back(std::move(s));
        }
        for (const auto& s : shifted) ptrs.push_back(&s);
        const std::uint64_t o = gens.empty() ? 1 : orbit_size(m, ptrs);
        rep.factor_image_orders.push_back(o);
        rep.factor_surjective.push_back(o == m);
    }

    // mixed-radix index over the product
    std::vector<std::uint64_t> radix(n);
    for (std::size_t i = 0; i < n; ++i) radix[i] = groups[i].order();
    const std::uint64_t total = rep.product_order.get_ui();
    std::vector<bool> seen(total, false);
    auto encode = [&](const std::vector<std::uint32_t>& d) {
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < n; ++i) x = x * radix[i] + d[i];
        return x;
    };
    std::vector<std::uint64_t> queue{encode(id_index)};
    seen[queue[0]] = true;
    std::vector<std::uint32_t> digits(n), next(n);
    for (std::size_t h = 0; h < queue.size(); ++h) {
        std::uint64_t x = queue[h];
        for (std::size_t i = n; i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(x % radix[i]);
            x /= radix[i];
        }
        for (std::size_t k = 0; k < gens.size(); ++k) {
            for (std::size_t i = 0; i < n; ++i) next[i] = tabs[i][k][digits[i]];
            const std::uint64_t y = encode(next);
            if (!seen[y]) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    rep.image_order = queue.size();
    rep.onto = rep.image_order == total;

    rep.hall_hypothesis = true;
    std::vector<std::int64_t> chars;
    for (const auto& f : space.factors()) {
        const auto& r = f.ring();
        const bool ok = f.projective() && r.is_field() && r.degree() == 1 && r.characteristic() >= 5;
        if (!ok) rep.hall_hypothesis = false;
        chars.push_back(r.characteristic());
    }
    std::sort(chars.begin(), chars.end());
    if (std::adjacent_find(chars.begin(), chars.end()) != chars.end()) rep.hall_hypothesis = false;
    return rep;
}

NormalizerReport normalizer_quotient_order(const ProductSpace& space, const ProductElement& a, const ProductElement& b,
                                           const Budget& budget) {
    space.check(a);
    space.check(b);
    const std::size_t n = space.size();
    NormalizerReport rep;
    rep.n = static_cast<int>(n);
    rep.bound = ipow(Integer(4), static_cast<unsigned long>(n - 1));

    std::vector<Mat2F> A(n), B(n), AB(n);
    for (std::size_t i = 0; i < n; ++i) {
        const MatrixSpace& s = space.factors()[i];
        A[i] = s.normalize(a[i]);
        B[i] = s.normalize(b[i]);
        AB[i] = s.mul(A[i], B[i]);
        const std::string slot = "slot " + std::to_string(i) + ": ";
        if (s.is_identity(A[i]) || s.is_identity(B[i]) || s.is_identity(AB[i]))
            throw InvalidArgument(slot + "A_i, B_i and A_i B_i must be nontrivial");
        if (!s.is_identity(s.mul(A[i], A[i])) || !s.is_identity(s.mul(B[i], B[i])))
            throw InvalidArgument(slot + "A_i and B_i must be involutions");
        if (s.mul(A[i], B[i]) != s.mul(B[i], A[i])) throw InvalidArgument(slot + "A_i and B_i must commute");
    }

    // witness: product of the per-slot Klein groups <A_i, B_i>
    Integer witness = 1;
    for (std::size_t i = 0; i < n; ++i)
        witness *= static_cast<unsigned long>(FiniteMatrixGroup(space.factors()[i], {A[i], B[i]}, budget).order());
    rep.witness_order = witness.get_ui();
    rep.witness_quotient = witness / 4;
    rep.quotient_order = rep.witness_quotient;

    // exact: x = (x_i) normalizes H iff conjugation by every x_i induces one
    // common permutation sigma of {A, B, AB}
    try {
        const std::array<int, 6> sa{0, 0, 1, 1, 2, 2}, sb{1, 2, 0, 2, 0, 1};
        std::vector<std::array<std::uint64_t, 6>> counts(n);
        for (std::size_t i = 0; i < n; ++i) {
            const MatrixSpace& s = space.factors()[i];
            const FiniteMatrixGroup g = FiniteMatrixGroup::full(s, budget);
            const std::array<Mat2F, 3> h{A[i], B[i], AB[i]};
            counts[i].fill(0);
            for (std::size_t j = 0; j < g.order(); ++j) {
                const Mat2F x = g.element(j), xi = s.inverse(x);
                const Mat2F ca = s.mul(s.mul(x, A[i]), xi), cb = s.mul(s.mul(x, B[i]), xi);
                for (std::size_t t = 0; t < 6; ++t)
                    if (ca == h[static_cast<std::size_t>(sa[t])] && cb == h[static_cast<std::size_t>(sb[t])])
                        ++counts[i][t];
            }
        }
        Integer total = 0;
        for (std::size_t t = 0; t < 6; ++t) {
            Integer term = 1;
            for (std::size_t i = 0; i < n; ++i) term *= static_cast<unsigned long>(counts[i][t]);
            total += term;
        }
        rep.normalizer_order = total;
        rep.quotient_order = total / 4;
        rep.exact = true;
    } catch (const BudgetExceeded&) {
        rep.exact = false;
    }
    rep.holds = rep.quotient_order >= rep.bound;
    return rep;
}

CosetTable pullback_cover_table(const Presentation& pres, const ProductSpace& space,
                                const std::vector<ProductElement>& images, const std::vector<ProductElement>& subgroup,
                                const Budget& budget) {
    if (images.size() != pres.generators.size()) throw InvalidArgument("one image per generator is required");
    std::vector<ProductElement> img;
    for (const auto& x : images) {
        space.check(x);
        img.push_back(space.normalize(x));
    }
    for (const Word& r : pres.relators) {
        ProductElement acc = space.identity();
        for (int letter : r) {
            const auto& g = img[static_cast<std::size_t>(std::abs(letter) - 1)];
            acc = space.mul(acc, letter > 0 ? g : space.inverse(g));
        }
        if (!space.is_identity(acc))
            throw RelatorViolated("relator " + pres.word_to_string(r) + " maps to a nontrivial element");
    }

    // subgroup: dedupe, then check identity and closure
    std::vector<ProductElement> H;
    std::unordered_set<std::vector<std::uint64_t>, KeyHash> hkeys;
    for (const auto& x : subgroup) {
        space.check(x);
        if (hkeys.insert(space.key(x)).second) H.push_back(space.normalize(x));
    }
    if (!hkeys.count(space.key(space.identity()))) throw InvalidArgument("subgroup must contain the identity");
    charge(static_cast<std::uint64_t>(H.size()) * H.size(), budget, "subgroup closure check");
    for (const auto& x : H)
        for (const auto& y : H)
            if (!hkeys.count(space.key(space.mul(x, y)))) throw InvalidArgument("subgroup is not closed");

    auto coset_key = [&](const ProductElement& x) {
        std::vector<std::uint64_t> best;
        for (const auto& h : H) {
            auto k = space.key(space.mul(h, x));
            if (best.empty() || k < best) best = std::move(k);
        }
        return best;
    };

    const std::size_t ng = img.size();
    std::unordered_map<std::vector<std::uint64_t>, int, KeyHash> index;
    std::vector<ProductElement> reps{space.identity()};
    index.emplace(coset_key(reps[0]), 0);
    std::vector<std::vector<int>> action(ng);
    for (std::size_t c = 0; c < reps.size(); ++c) {
        for (std::size_t g = 0; g < ng; ++g) {
            ProductElement y = space.mul(reps[c], img[g]);
            auto k = coset_key(y);
            auto it = index.find(k);
            int target;
            if (it == index.end()) {
                target = static_cast<int>(reps.size());
                index.emplace(std::move(k), target);
                charge(reps.size() + 1, budget, "pullback coset enumeration");
                reps.push_back(std::move(y));
            } else {
                target = it->second;
            }
            action[g].push_back(target);
        }
    }
    CosetTable t;
    t.index = static_cast<int>(reps.size());
    t.action = std::move(action);
    return t;
}

}  // namespace kll
