#include "kll/poly.hpp"

#include "kll/error.hpp"
#include "kll/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace kll {

// ----------------------------------------------------------------------------
// QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

QPoly QPoly::from_integers(const std::vector<Integer>& coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (const auto& z : coeffs) c.emplace_back(z);
    return QPoly(std::move(c));
}

QPoly QPoly::from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return QPoly(std::move(c));
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool QPoly::has_integer_coeffs() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
    if (c_.empty()) return {};
    return (Rational(1) / c_.back()) * *this;
}

QPoly QPoly::primitive() const {
    if (c_.empty()) return {};
    Integer lcm_den(1), g(0);
    for (const auto& c : c_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> z;
    for (const auto& c : c_) {
        Integer v = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        z.push_back(v);
    }
    if (c_.back() < 0) g = -g;
    for (auto& v : z) v /= g;
    return from_integers(z);
}

QPoly QPoly::operator-() const { return Rational(-1) * *this; }

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return QPoly(std::move(r));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(r));
}

QPoly operator*(const Rational& s, const QPoly& a) {
    std::vector<Rational> r = a.c_;
    for (auto& c : r) c *= s;
    return QPoly(std::move(r));
}

std::string QPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational a = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        if (a != 1 || i == 0) os << kll::to_string(a);
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    const Rational lb = b.leading();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i) {
        Rational q = rem[static_cast<std::size_t>(i)] / lb;
        quo[static_cast<std::size_t>(i - db)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x % y;
        x = std::move(y);
        y = r.primitive();  // keeps coefficient growth in check; gcd is defined up to units
    }
    return x.monic();
}

Bezout extended_gcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rational inv = Rational(1) / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}


Rational resultant(const QPoly& f, const QPoly& g) {
    if (f.is_zero() || g.is_zero()) return Rational(0);
    const int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return Rational(1);
    if (m == 0) return rpow(f.leading(), static_cast<unsigned long>(n));
    if (n == 0) return rpow(g.leading(), static_cast<unsigned long>(m));
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
    // Rows hold coefficients from the leading term down.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = f.coeff(static_cast<std::size_t>(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = g.coeff(static_cast<std::size_t>(n - j));
    return determinant(std::move(s));
}

Rational discriminant(const QPoly& f) {
    const int n = f.degree();
    if (n < 1) throw InvalidArgument("discriminant of a constant polynomial");
    if (n == 1) return Rational(1);
    Rational r = resultant(f, f.derivative()) / f.leading();
    if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) r = -r;
    return r;
}

// ----------------------------------------------------------------------------
// Sturm sequences

namespace {

int sign(const Rational& q) { return sgn(q); }

// Divide by the (positive) content; sign is preserved.
QPoly shrink(const QPoly& p) {
    QPoly q = p.primitive();
    return (!p.is_zero() && sgn(p.leading()) != sgn(q.leading())) ? -q : q;
}

}  // namespace

SturmSequence::SturmSequence(const QPoly& squarefree) {
    if (squarefree.is_zero()) throw InvalidArgument("Sturm sequence of the zero polynomial");
    seq_.push_back(shrink(squarefree));
    seq_.push_back(shrink(squarefree.derivative()));
    while (!seq_.back().is_zero() && seq_.back().degree() > 0) {
        QPoly r = seq_[seq_.size() - 2] % seq_.back();
        if (r.is_zero()) break;
        // Scaling by a positive constant keeps sign patterns intact.
        seq_.push_back(-shrink(r));
    }
    if (seq_.back().is_zero()) seq_.pop_back();
}

int SturmSequence::sign_changes_at(const Rational& x) const {
    int changes = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sign(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::sign_changes_at_infinity(bool positive) const {
    int changes = 0, last = 0;
    for (const auto& p : seq_) {
        int s = sign(p.leading());
        if (!positive && p.degree() % 2 == 1) s = -s;
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmSequence::count_in(const Rational& a, const Rational& b) const {
    return sign_changes_at(a) - sign_changes_at(b);
}

int SturmSequence::count_at_most(const Rational& x) const {
    return sign_changes_at_infinity(false) - sign_changes_at(x);
}

int SturmSequence::count_real() const {
    return sign_changes_at_infinity(false) - sign_changes_at_infinity(true);
}

QPoly squarefree_part(const QPoly& f) {
    if (f.degree() < 1) return f.monic();
    QPoly g = gcd(f, f.derivative());
    return divmod(f, g).first.monic();
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& f) {
    // Yun's algorithm (characteristic zero).
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() < 1) return out;
    QPoly a = f.monic();
    QPoly b = gcd(a, a.derivative());
    QPoly c = divmod(a, b).first;
    QPoly d = divmod(a.derivative(), b).first - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        QPoly g = gcd(c, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        c = divmod(c, g).first;
        d = divmod(d, g).first - c.derivative();
        ++i;
    }
    return out;
}

int count_roots_at_most(const std::vector<std::pair<QPoly, int>>& decomposition, const Rational& x) {
    int total = 0;
    for (const auto& [g, mult] : decomposition) total += mult * SturmSequence(g).count_at_most(x);
    return total;
}

Rational cauchy_root_bound(const QPoly& f) {
    if (f.degree() < 1) return Rational(1);
    Rational m(0);
    const Rational lc = abs(f.leading());
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f.coeff(static_cast<std::size_t>(i))) / lc));
    return m + 1;
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const QPoly& f, const Rational& max_width) {
    const SturmSequence s(f);
    const Rational b = cauchy_root_bound(f);
    std::vector<std::pair<Rational, Rational>> out;
    std::vector<std::pair<Rational, Rational>> stack{{-b, b}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        const int n = s.count_in(lo, hi);
        if (n == 0) continue;
        if (n == 1 && hi - lo <= max_width) {
            out.emplace_back(lo, hi);
            continue;
        }
        const Rational mid = (lo + hi) / 2;
        stack.emplace_back(mid, hi);
        stack.emplace_back(lo, mid);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int sign_at_root(const QPoly& f, const QPoly& g, Rational lo, Rational hi) {
    const SturmSequence sf(f);
    const QPoly gs = squarefree_part(g);
    if (gs.degree() < 1) return sgn(g.leading());
    const SturmSequence sg(gs);
    for (int iter = 0; iter < 4096; ++iter) {
        if (sg.count_in(lo, hi) == 0) return sgn(g.eval(hi));
        const Rational mid = (lo + hi) / 2;
        if (sf.count_in(lo, mid) == 1) hi = mid;
        else lo = mid;
    }
    throw InvalidArgument("g vanishes at the root of f");
}

// ----------------------------------------------------------------------------
// F_p arithmetic

std::int64_t mod_pow(std::int64_t a, std::uint64_t e, std::int64_t m) {
    __int128 r = 1 % m, b = ((a % m) + m) % m;
    while (e > 0) {
        if (e & 1U) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1U;
    }
    return static_cast<std::int64_t>(r);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - q * newt);
        std::tie(r, newr) = std::make_pair(newr, r - q * newr);
    }
    if (r != 1) throw InvalidArgument(std::to_string(a) + " is not invertible mod " + std::to_string(p));
    return t < 0 ? t + p : t;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FpPoly::FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    if (p < 2) throw InvalidArgument("modulus must be at least 2");
    for (auto& c : c_) c = ((c % p_) + p_) % p_;
    trim();
}

FpPoly FpPoly::reduce(const QPoly& f, std::int64_t p) {
    std::vector<std::int64_t> c;
    c.reserve(f.coeffs().size());
    const Integer P(static_cast<long>(p));
    for (const auto& q : f.coeffs()) {
        Integer num = q.get_num() % P, den = q.get_den() % P;
        if (den == 0) throw DenominatorNotCoprime("coefficient " + kll::to_string(q) + " has denominator divisible by " + std::to_string(p));
        std::int64_t n = num.get_si(), d = den.get_si();
        c.push_back(((n % p + p) % p) * mod_inverse(d, p) % p);
    }
    return FpPoly(p, std::move(c));
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const {
    if (c_.empty()) return *this;
    const std::int64_t inv = mod_inverse(c_.back(), p_);
    std::vector<std::int64_t> r = c_;
    for (auto& c : r) c = static_cast<std::int64_t>(static_cast<__int128>(c) * inv % p_);
    return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly(p_, {});
    std::vector<std::int64_t> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = static_cast<std::int64_t>(static_cast<__int128>(c_[i]) * static_cast<std::int64_t>(i % static_cast<std::size_t>(p_)) % p_);
    return FpPoly(p_, std::move(d));
}

std::int64_t FpPoly::eval(std::int64_t x) const {
    __int128 acc = 0;
    x = ((x % p_) + p_) % p_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
    return static_cast<std::int64_t>(acc);
}

QPoly FpPoly::lift() const {
    std::vector<Rational> r;
    for (auto c : c_) r.emplace_back(static_cast<long>(c));
    return QPoly(std::move(r));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<std::int64_t> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
    return FpPoly(a.p_, std::move(r));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<std::int64_t> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) - b.coeff(i) + a.p_) % a.p_;
    return FpPoly(a.p_, std::move(r));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
    std::vector<__int128> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<__int128>(a.c_[i]) * b.c_[j]) % a.p_;
    }
    std::vector<std::int64_t> r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::int64_t>(acc[i]);
    return FpPoly(a.p_, std::move(r));
}

bool operator<(const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::string FpPoly::to_string(const std::string& var) const {
    std::vector<Rational> r;
    for (auto c : c_) r.emplace_back(static_cast<long>(c));
    return QPoly(std::move(r)).to_string(var);
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero mod p");
    const std::int64_t p = a.modulus();
    std::vector<std::int64_t> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {FpPoly(p, {}), a};
    const std::int64_t inv = mod_inverse(b.leading(), p);
    std::vector<std::int64_t> quo(static_cast<std::size_t>(a.degree() - db + 1));
    for (int i = a.degree(); i >= db; --i) {
        std::int64_t q = static_cast<std::int64_t>(static_cast<__int128>(rem[static_cast<std::size_t>(i)]) * inv % p);
        quo[static_cast<std::size_t>(i - db)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rem[static_cast<std::size_t>(i - db + j)];
            slot = static_cast<std::int64_t>((slot - static_cast<__int128>(q) * b.coeffs()[static_cast<std::size_t>(j)] % p + p) % p);
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {FpPoly(p, std::move(quo)), FpPoly(p, std::move(rem))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& mod) {
    FpPoly result(base.modulus(), {1});
    result = result % mod;
    FpPoly b = base % mod;
    const std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % mod;
        if (mpz_tstbit(exp.get_mpz_t(), i) != 0) result = (result * b) % mod;
    }
    return result;
}

namespace {

// p-th root of a polynomial whose derivative vanishes: g(x^p) -> g(x).
FpPoly pth_root(const FpPoly& f) {
    const std::int64_t p = f.modulus();
    std::vector<std::int64_t> r;
    for (std::size_t i = 0; i < f.coeffs().size(); i += static_cast<std::size_t>(p)) r.push_back(f.coeffs()[i]);
    return FpPoly(p, std::move(r));  // coefficients are their own p-th roots in F_p
}

// Squarefree factorization over F_p (monic input); returns (g_i, i).
void squarefree_fp(const FpPoly& f, int scale, std::vector<std::pair<FpPoly, int>>& out) {
    if (f.degree() < 1) return;
    const std::int64_t p = f.modulus();
    FpPoly df = f.derivative();
    if (df.is_zero()) {
        squarefree_fp(pth_root(f), scale * static_cast<int>(p), out);
        return;
    }
    FpPoly c = gcd(f, df);
    FpPoly w = divmod(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = gcd(w, c);
        FpPoly z = divmod(w, y).first;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * scale);
        ++i;
        w = y;
        c = divmod(c, y).first;
    }
    if (c.degree() > 0) squarefree_fp(pth_root(c), scale * static_cast<int>(p), out);
}

// Kernel basis of the Berlekamp map v -> v(Q - I) for squarefree monic f.
std::vector<FpPoly> berlekamp_kernel(const FpPoly& f) {
    const std::int64_t p = f.modulus();
    const int n = f.degree();
    // Row i: x^{ip} mod f.
    std::vector<std::vector<std::int64_t>> q(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
    FpPoly xp = powmod(FpPoly(p, {0, 1}), Integer(static_cast<long>(p)), f);
    FpPoly row(p, {1});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = row.coeff(static_cast<std::size_t>(j));
        q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = (q[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] + p - 1) % p;
        row = (row * xp) % f;
    }
    // Left kernel of q: solve v q = 0, i.e. kernel of q^T.
    std::vector<std::vector<std::int64_t>> m(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (int c = 0; c < n && r < static_cast<std::size_t>(n); ++c) {
        std::size_t piv = r;
        while (piv < static_cast<std::size_t>(n) && m[piv][static_cast<std::size_t>(c)] == 0) ++piv;
        if (piv == static_cast<std::size_t>(n)) continue;
        std::swap(m[piv], m[r]);
        const std::int64_t inv = mod_inverse(m[r][static_cast<std::size_t>(c)], p);
        for (auto& v : m[r]) v = static_cast<std::int64_t>(static_cast<__int128>(v) * inv % p);
        for (std::size_t rr = 0; rr < static_cast<std::size_t>(n); ++rr) {
            if (rr == r || m[rr][static_cast<std::size_t>(c)] == 0) continue;
            const std::int64_t fct = m[rr][static_cast<std::size_t>(c)];
            for (int cc = 0; cc < n; ++cc)
                m[rr][static_cast<std::size_t>(cc)] = static_cast<std::int64_t>((m[rr][static_cast<std::size_t>(cc)] - static_cast<__int128>(fct) * m[r][static_cast<std::size_t>(cc)] % p + p) % p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<FpPoly> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[static_cast<std::size_t>(pivot_col[i])] = (p - m[i][static_cast<std::size_t>(free)]) % p;
        basis.emplace_back(p, std::move(v));
    }
    return basis;
}

std::vector<FpPoly> berlekamp_split(const FpPoly& f) {
    const std::int64_t p = f.modulus();
    std::vector<FpPoly> kernel = berlekamp_kernel(f);
    const std::size_t k = kernel.size();
    std::vector<FpPoly> factors{f};
    for (const auto& v : kernel) {
        if (factors.size() == k) break;
        if (v.degree() < 1) continue;
        std::vector<FpPoly> next;
        for (const auto& g : factors) {
            if (g.degree() <= 1) {
                next.push_back(g);
                continue;
            }
            FpPoly rest = g;
            for (std::int64_t s = 0; s < p && rest.degree() > 0; ++s) {
                FpPoly h = gcd(rest, v - FpPoly(p, {s}));
                if (h.degree() > 0 && h.degree() < rest.degree()) {
                    next.push_back(h);
                    rest = divmod(rest, h).first.monic();
                } else if (h.degree() == rest.degree()) {
                    break;
                }
            }
            if (rest.degree() > 0) next.push_back(rest.monic());
        }
        factors = std::move(next);
    }
    return factors;
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f) {
    if (f.is_zero()) throw InvalidArgument("factorization of the zero polynomial");
    std::vector<std::pair<FpPoly, int>> sqf;
    squarefree_fp(f.monic(), 1, sqf);
    std::vector<std::pair<FpPoly, int>> out;
    for (const auto& [g, mult] : sqf) {
        if (g.degree() == 1) {
            out.emplace_back(g, mult);
            continue;
        }
        for (auto& h : berlekamp_split(g)) out.emplace_back(h, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first == b.first) return a.second < b.second;
        return a.first < b.first;
    });
    return out;
}

bool is_irreducible(const FpPoly& f) {
    if (f.degree() < 1) return false;
    auto fs = factor(f);
    return fs.size() == 1 && fs.front().second == 1;
}

}  // namespace kll
