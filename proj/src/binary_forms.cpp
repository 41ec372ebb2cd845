#include "k3b/binary_forms.hpp"

#include <algorithm>
#include <set>

namespace k3b {

namespace {

IntMatrix mat2(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    IntMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

Integer det2(const IntMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

IntMatrix inverse2(const IntMatrix& m) {
    Integer d = det2(m);
    if (d != 1 && d != -1)
        fail(ErrorKind::internal, "inverse2: matrix not unimodular");
    // d is +-1, so 1/d = d
    return mat2(d * m(1, 1), -d * m(0, 1), -d * m(1, 0), d * m(0, 0));
}

const IntMatrix& reflection() {
    static const IntMatrix j = mat2(1, 0, 0, -1);
    return j;
}

void require_rank2(const GramLattice& l) {
    if (l.rank() != 2)
        fail(ErrorKind::domain, "binary form operations need a rank-2 lattice");
}

// ---- indefinite, nonsquare discriminant --------------------------------

struct Indefinite {
    Integer D;
    Integer s;  // floor(sqrt(D))
    explicit Indefinite(const Integer& d) : D(d), s(isqrt(d)) {}

    // r = b mod 2|a| in the normalizing range for the rho operator.
    Integer normalize(const Integer& b, const Integer& a) const {
        Integer aa = abs(a);
        Integer two = 2 * aa;
        if (aa > s) {
            Integer r = mod_floor(b, two);
            if (r > aa)
                r -= two;
            return r;
        }
        return s - mod_floor(s - b, two);
    }

    bool reduced(const BinaryForm& f) const {
        const Integer& b = f.B();
        Integer two_a = 2 * abs(f.A());
        return sgn(b) > 0 && b <= s && s - b < two_a && two_a <= s + b;
    }

    // rho(f) with its transformation [[0, 1], [-1, t]].
    BinaryForm rho(const BinaryForm& f, IntMatrix& step) const {
        Integer r = normalize(-f.B(), f.C());
        Integer t = (r + f.B()) / (2 * f.C());
        step = mat2(0, 1, -1, t);
        Integer newc = (r * r - D) / (4 * f.C());
        return BinaryForm(f.C(), r, newc);
    }

    ReducedStep reduce(const BinaryForm& f) const {
        ReducedStep cur{f, IntMatrix::identity(2)};
        IntMatrix step;
        while (!reduced(cur.form)) {
            cur.form = rho(cur.form, step);
            cur.transform = step * cur.transform;
        }
        return cur;
    }

    std::vector<ReducedStep> cycle(const BinaryForm& f) const {
        std::vector<ReducedStep> out;
        out.push_back(reduce(f));
        IntMatrix step;
        for (;;) {
            ReducedStep next{rho(out.back().form, step), IntMatrix()};
            next.transform = step * out.back().transform;
            if (next.form == out.front().form)
                break;
            out.push_back(std::move(next));
        }
        return out;
    }
};

// ---- square discriminant D = m^2 ---------------------------------------

// Canonical forms (0, m, c), 0 <= c < m, one per isotropic line whose proper
// completion has middle coefficient +m.
std::vector<ReducedStep> square_canonical(const BinaryForm& f, const Integer& m) {
    std::vector<std::pair<Integer, Integer>> lines;
    auto add_line = [&](Integer x, Integer y) {
        Integer g = gcd(x, y);
        x /= g;
        y /= g;
        if (sgn(x) < 0 || (sgn(x) == 0 && sgn(y) < 0)) {
            x = -x;
            y = -y;
        }
        for (const auto& l : lines)
            if (l.first == x && l.second == y)
                return;
        lines.emplace_back(x, y);
    };
    if (sgn(f.A()) == 0) {
        add_line(1, 0);
        add_line(-f.C(), f.B());
    } else {
        // roots x/y = (-B +- m) / (2A)
        add_line(-f.B() + m, 2 * f.A());
        add_line(-f.B() - m, 2 * f.A());
    }
    std::vector<ReducedStep> out;
    for (const auto& [x, y] : lines) {
        Integer a, b;
        ext_gcd(x, y, a, b);  // x*a + y*b = 1
        IntMatrix t = mat2(x, y, -b, a);
        BinaryForm h = f.transformed(t);
        if (sgn(h.A()) != 0)
            fail(ErrorKind::internal, "isotropic line is not isotropic");
        if (h.B() != m)
            continue;
        Integer k = -floor_div(h.C(), m);
        t.add_row_multiple(1, 0, k);
        h = f.transformed(t);
        out.push_back(ReducedStep{h, t});
    }
    if (out.empty())
        fail(ErrorKind::internal, "no positively oriented isotropic line");
    return out;
}

// ---- definite ----------------------------------------------------------

ReducedStep reduce_definite(const BinaryForm& f) {
    ReducedStep cur{f, IntMatrix::identity(2)};
    for (;;) {
        const Integer& A = cur.form.A();
        const Integer& B = cur.form.B();
        if (B > A || B <= -A) {
            // B' in (-A, A]
            Integer k = -floor_div(A - B, 2 * A);
            IntMatrix step = mat2(1, 0, -k, 1);
            cur.form = cur.form.transformed(step);
            cur.transform = step * cur.transform;
            continue;
        }
        if (A > cur.form.C() || (A == cur.form.C() && sgn(B) < 0)) {
            IntMatrix step = mat2(0, 1, -1, 0);
            cur.form = cur.form.transformed(step);
            cur.transform = step * cur.transform;
            continue;
        }
        return cur;
    }
}

BinaryForm negate(const BinaryForm& f) { return BinaryForm(-f.A(), -f.B(), -f.C()); }

std::optional<IntMatrix> proper_witness(const BinaryForm& f, const BinaryForm& g) {
    const Integer D = f.discriminant();
    if (D != g.discriminant())
        return std::nullopt;
    if (sgn(D) == 0)
        fail(ErrorKind::domain, "degenerate binary form");
    if (sgn(D) < 0) {
        if (sgn(f.A()) != sgn(g.A()))
            return std::nullopt;
        const bool neg = sgn(f.A()) < 0;
        ReducedStep rf = reduce_definite(neg ? negate(f) : f);
        ReducedStep rg = reduce_definite(neg ? negate(g) : g);
        if (!(rf.form == rg.form))
            return std::nullopt;
        return inverse2(rg.transform) * rf.transform;
    }
    if (is_square(D)) {
        Integer m = isqrt(D);
        auto cf = square_canonical(f, m);
        auto cg = square_canonical(g, m);
        for (const auto& a : cf)
            for (const auto& b : cg)
                if (a.form == b.form)
                    return inverse2(b.transform) * a.transform;
        return std::nullopt;
    }
    Indefinite ctx(D);
    ReducedStep rg = ctx.reduce(g);
    for (const auto& step : ctx.cycle(f))
        if (step.form == rg.form)
            return inverse2(rg.transform) * step.transform;
    return std::nullopt;
}

void verify_witness(const GramLattice& a, const GramLattice& b, const IntMatrix& u) {
    Integer d = det2(u);
    if ((d != 1 && d != -1) || !(a.transformed(u) == b))
        fail(ErrorKind::internal, "equivalence witness failed verification");
}

}  // namespace

BinaryForm::BinaryForm(Integer A, Integer B, Integer C) : a_(std::move(A)), b_(std::move(B)), c_(std::move(C)) {}

BinaryForm BinaryForm::from_gram(const GramLattice& l) {
    require_rank2(l);
    return BinaryForm(l(0, 0) / 2, l(0, 1), l(1, 1) / 2);
}

GramLattice BinaryForm::gram() const { return GramLattice(mat2(2 * a_, b_, b_, 2 * c_)); }

BinaryForm BinaryForm::transformed(const IntMatrix& u) const { return from_gram(gram().transformed(u)); }

std::vector<ReducedStep> reduce_cycle(const GramLattice& lattice) {
    BinaryForm f = BinaryForm::from_gram(lattice);
    Integer D = f.discriminant();
    if (sgn(D) == 0)
        fail(ErrorKind::domain, "degenerate binary form");
    if (sgn(D) < 0)
        fail(ErrorKind::domain, "reduce_cycle needs an indefinite form");
    if (is_square(D))
        return square_canonical(f, isqrt(D));
    return Indefinite(D).cycle(f);
}

std::optional<IntMatrix> properly_equivalent(const GramLattice& a, const GramLattice& b) {
    require_rank2(a);
    require_rank2(b);
    auto w = proper_witness(BinaryForm::from_gram(a), BinaryForm::from_gram(b));
    if (w)
        verify_witness(a, b, *w);
    return w;
}

std::optional<IntMatrix> is_isometric(const GramLattice& a, const GramLattice& b) {
    require_rank2(a);
    require_rank2(b);
    if (a.det() != b.det())
        return std::nullopt;
    if (auto w = properly_equivalent(a, b))
        return w;
    GramLattice flipped = a.transformed(reflection());
    if (auto w = properly_equivalent(flipped, b)) {
        IntMatrix u = (*w) * reflection();
        verify_witness(a, b, u);
        return u;
    }
    return std::nullopt;
}

namespace {

std::optional<std::pair<Integer, Integer>> primitive_rep(const BinaryForm& f, const Integer& m) {
    const Integer D = f.discriminant();
    if (!is_square(D) && 4 * m * m < D) {
        // |m| < sqrt(D)/2: primitively represented iff m leads a reduced form in the cycle.
        for (const auto& step : Indefinite(D).cycle(f))
            if (step.form.A() == m)
                return std::make_pair(step.transform(0, 0), step.transform(0, 1));
        return std::nullopt;
    }
    const Integer two_m = 2 * abs(m);
    const Integer four_m = 4 * m;
    for (Integer b = 0; b < two_m; ++b) {
        Integer num = b * b - D;
        if (!mpz_divisible_p(num.get_mpz_t(), four_m.get_mpz_t()))
            continue;
        BinaryForm h(m, b, num / four_m);
        if (auto w = proper_witness(f, h))
            return std::make_pair((*w)(0, 0), (*w)(0, 1));
    }
    return std::nullopt;
}

std::optional<std::pair<Integer, Integer>> definite_rep(const BinaryForm& f, const Integer& n) {
    // f positive definite; |y| <= sqrt(4 A n / |D|), |x| <= sqrt(4 C n / |D|)
    if (sgn(n) <= 0)
        return std::nullopt;
    const Integer absd = -f.discriminant();
    const Integer ymax = isqrt(4 * f.A() * n / absd);
    const Integer xmax = isqrt(4 * f.C() * n / absd);
    std::optional<std::pair<Integer, Integer>> any;
    for (Integer y = 0; y <= ymax; ++y)
        for (Integer x = -xmax; x <= xmax; ++x) {
            if (sgn(y) == 0 && sgn(x) <= 0)
                continue;
            if (f.value(x, y) != n)
                continue;
            if (gcd(x, y) == 1)
                return std::make_pair(x, y);
            if (!any)
                any = std::make_pair(x, y);
        }
    return any;
}

}  // namespace

std::optional<std::pair<Integer, Integer>> represents(const GramLattice& lattice, const Integer& n) {
    BinaryForm f = BinaryForm::from_gram(lattice);
    const Integer D = f.discriminant();
    if (sgn(D) == 0)
        fail(ErrorKind::domain, "degenerate binary form");
    if (mpz_odd_p(n.get_mpz_t()))
        return std::nullopt;
    const Integer N = n / 2;
    std::optional<std::pair<Integer, Integer>> out;
    if (sgn(D) < 0) {
        out = sgn(f.A()) > 0 ? definite_rep(f, N) : definite_rep(negate(f), -N);
    } else if (sgn(N) == 0) {
        if (is_square(D)) {
            const ReducedStep s = square_canonical(f, isqrt(D)).front();
            out = std::make_pair(s.transform(0, 0), s.transform(0, 1));
        }
    } else {
        for (Integer k = 1; k * k <= abs(N); ++k) {
            Integer kk = k * k;
            if (!mpz_divisible_p(N.get_mpz_t(), kk.get_mpz_t()))
                continue;
            if (auto w = primitive_rep(f, N / kk)) {
                out = std::make_pair(k * w->first, k * w->second);
                break;
            }
        }
    }
    if (out && (sgn(out->second) < 0 || (sgn(out->second) == 0 && sgn(out->first) < 0))) {
        out->first = -out->first;
        out->second = -out->second;
    }
    if (out && 2 * f.value(out->first, out->second) != n)
        fail(ErrorKind::internal, "representation witness failed verification");
    return out;
}

// ---- Pell ----------------------------------------------------------------

std::pair<Integer, Integer> pell_fundamental(const Integer& D) {
    if (sgn(D) <= 0 || is_square(D))
        fail(ErrorKind::domain, "pell_fundamental needs a positive nonsquare D");
    const Integer a0 = isqrt(D);
    Integer m = 0, d = 1, a = a0;
    Integer p_prev = 1, p = a0;
    Integer q_prev = 0, q = 1;
    while (p * p - D * q * q != 1) {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        Integer pn = a * p + p_prev;
        Integer qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
    return {p, q};
}

std::pair<Integer, Integer> fundamental_unit4(const Integer& D) {
    if (sgn(D) <= 0 || is_square(D))
        fail(ErrorKind::domain, "fundamental_unit4 needs a positive nonsquare D");
    const Integer r = mod_floor(D, 4);
    if (r == 0) {
        auto [x, y] = pell_fundamental(D / 4);
        return {2 * x, y};
    }
    if (r != 1)
        fail(ErrorKind::domain, "t^2 - D u^2 = 4 needs D = 0 or 1 mod 4");
    // Continued fraction of w = (1 + sqrt D)/2; units p - q * conj(w) with
    // norm p^2 - p q - q^2 (D - 1)/4.
    const Integer s = isqrt(D);
    const Integer k = (D - 1) / 4;
    Integer P = 1, Q = 2;
    Integer p_prev = 1, p = 0, q_prev = 0, q = 1;
    bool first = true;
    for (;;) {
        Integer a = floor_div(P + s, Q);
        if (first) {
            p = a;
            q = 1;
            first = false;
        } else {
            Integer pn = a * p + p_prev;
            Integer qn = a * q + q_prev;
            p_prev = p;
            q_prev = q;
            p = pn;
            q = qn;
        }
        Integer norm = p * p - p * q - q * q * k;
        if (norm == 1 || norm == -1) {
            Integer t = 2 * p - q;
            Integer u = q;
            if (norm == -1) {
                Integer t2 = (t * t + D * u * u) / 2;
                u = t * u;
                t = t2;
            }
            return {t, u};
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

namespace {

bool better(const PellWitness& a, const PellWitness& b) {
    if (a.s != b.s)
        return a.s < b.s;
    return a.r < b.r;
}

void offer(std::optional<PellWitness>& slot, PellWitness w) {
    if (!slot || better(w, *slot))
        slot = std::move(w);
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d)
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    return out;
}

// Smallest s with D s^2 + target a square, scanning s <= bound.
std::optional<PellWitness> scan(const Integer& D, const Integer& target, const Integer& bound, PellSign sign) {
    for (Integer s = 0; s <= bound; ++s) {
        Integer v = D * s * s + target;
        if (is_square(v))
            return PellWitness{isqrt(v), s, sign};
    }
    return std::nullopt;
}

constexpr unsigned long pell_scan_limit = 1ul << 24;

}  // namespace

PellResult pell_pm(const Integer& D, const Integer& N) {
    if (sgn(N) <= 0)
        fail(ErrorKind::domain, "pell_pm needs N > 0");
    if (sgn(D) < 0)
        fail(ErrorKind::domain, "pell_pm needs D >= 0");
    PellResult res;
    if (sgn(D) == 0) {
        if (is_square(N))
            res.plus = PellWitness{isqrt(N), 0, PellSign::plus};
    } else if (is_square(D)) {
        // (r - m s)(r + m s) = +-N
        const Integer m = isqrt(D);
        for (int sg : {1, -1}) {
            const Integer target = sg * N;
            for (const auto& e0 : divisors(N))
                for (int es : {1, -1}) {
                    Integer e = es * e0;
                    Integer f = target / e;
                    Integer sum = e + f, diff = f - e;
                    if (mpz_odd_p(sum.get_mpz_t()))
                        continue;
                    Integer ms = diff / 2;
                    if (!mpz_divisible_p(ms.get_mpz_t(), m.get_mpz_t()))
                        continue;
                    PellWitness w{abs(sum / 2), abs(ms / m), sg > 0 ? PellSign::plus : PellSign::minus};
                    offer(sg > 0 ? res.plus : res.minus, w);
                }
        }
    } else if (N * N < D) {
        // |N/g^2| < sqrt(D): every primitive solution is a convergent of sqrt(D).
        if (is_square(N))
            res.plus = PellWitness{isqrt(N), 0, PellSign::plus};
        const Integer a0 = isqrt(D);
        // Values P_k^2 - D Q_k^2 are periodic; two periods cover both signs.
        Integer m = 0, d = 1, a = a0;
        Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
        std::size_t period = 0;
        for (std::size_t k = 0;; ++k) {
            Integer v = p * p - D * q * q;
            for (const auto& g : divisors(N)) {
                Integer gg = g * g;
                if (!mpz_divisible_p(N.get_mpz_t(), gg.get_mpz_t()))
                    continue;
                Integer rest = N / gg;
                if (v == rest)
                    offer(res.plus, PellWitness{g * p, g * q, PellSign::plus});
                if (v == -rest)
                    offer(res.minus, PellWitness{g * p, g * q, PellSign::minus});
            }
            m = d * a - m;
            d = (D - m * m) / d;
            a = (a0 + m) / d;
            if (period == 0 && d == 1)
                period = k + 1;
            if (period != 0 && k + 1 >= 2 * period)
                break;
            Integer pn = a * p + p_prev, qn = a * q + q_prev;
            p_prev = p;
            q_prev = q;
            p = pn;
            q = qn;
        }
    } else {
        // Nagell bounds on the fundamental solution of each class.
        auto [x1, y1] = pell_fundamental(D);
        Integer plus_bound = isqrt(y1 * y1 * N / (2 * (x1 + 1)));
        Integer minus_bound = isqrt(y1 * y1 * N / (2 * (x1 - 1)));
        res.search_bound = std::max(plus_bound, minus_bound);
        if (res.search_bound > Integer(std::to_string(pell_scan_limit)))
            fail(ErrorKind::limit, "enumeration limit: Pell search bound " + res.search_bound.get_str());
        res.plus = scan(D, N, plus_bound, PellSign::plus);
        res.minus = scan(D, -N, minus_bound, PellSign::minus);
    }
    for (const auto* w : {&res.plus, &res.minus})
        if (*w) {
            Integer v = w->value().r * w->value().r - D * w->value().s * w->value().s;
            if (v != (w->value().sign == PellSign::plus ? N : Integer(-N)))
                fail(ErrorKind::internal, "Pell witness failed verification");
            offer(res.witness, w->value());
        }
    res.solvable = res.witness.has_value();
    return res;
}

// ---- automorphisms ---------------------------------------------------------

bool is_automorph(const GramLattice& lattice, const IntMatrix& u) {
    Integer d = det2(u);
    return (d == 1 || d == -1) && lattice.transformed(u) == lattice;
}

AutomorphismGenerators automorphism_generators(const GramLattice& lattice) {
    BinaryForm f = BinaryForm::from_gram(lattice);
    const Integer D = f.discriminant();
    if (sgn(D) == 0)
        fail(ErrorKind::domain, "degenerate binary form");
    if (sgn(D) < 0)
        fail(ErrorKind::domain, "automorphism_generators needs an indefinite form");
    AutomorphismGenerators out;
    out.generators.push_back(mat2(-1, 0, 0, -1));

    Integer g = gcd(gcd(f.A(), f.B()), f.C());
    const Integer a = f.A() / g, b = f.B() / g, c = f.C() / g;
    const Integer Dp = D / (g * g);
    if (!is_square(Dp)) {
        auto [t, u] = fundamental_unit4(Dp);
        // substitution matrix M (column convention); U = M^T acts on rows
        IntMatrix m = mat2((t - b * u) / 2, -c * u, a * u, (t + b * u) / 2);
        IntMatrix uu = m.transpose();
        if (!is_automorph(lattice, uu))
            fail(ErrorKind::internal, "fundamental automorph failed verification");
        out.fundamental = uu;
        out.generators.push_back(uu);
    }
    GramLattice flipped = lattice.transformed(reflection());
    if (auto w = properly_equivalent(flipped, lattice)) {
        IntMatrix uu = (*w) * reflection();
        if (!is_automorph(lattice, uu) || det2(uu) != -1)
            fail(ErrorKind::internal, "improper automorph failed verification");
        out.improper = uu;
        out.generators.push_back(uu);
    }
    return out;
}

bool in_automorphism_group(const GramLattice& lattice, const AutomorphismGenerators& gens, const IntMatrix& u) {
    if (!is_automorph(lattice, u))
        return false;
    IntMatrix proper = u;
    if (det2(u) == -1) {
        if (!gens.improper)
            return false;
        proper = u * inverse2(*gens.improper);
    }
    const IntMatrix id = IntMatrix::identity(2);
    const IntMatrix neg = mat2(-1, 0, 0, -1);
    auto matches = [&](const IntMatrix& m) { return m == proper || neg * m == proper; };
    if (matches(id))
        return true;
    if (!gens.fundamental)
        return false;
    const Integer target = abs(proper(0, 0) + proper(1, 1));
    IntMatrix fwd = *gens.fundamental;
    IntMatrix back = inverse2(*gens.fundamental);
    IntMatrix pf = fwd, pb = back;
    // |trace| of eps^k grows strictly with |k|
    while (abs(pf(0, 0) + pf(1, 1)) <= target) {
        if (matches(pf) || matches(pb))
            return true;
        pf = pf * fwd;
        pb = pb * back;
    }
    return false;
}

DiscAutomorphism disc_action_matrix(const GramLattice& lattice, const FiniteQuadForm& form, const IntMatrix& u) {
    if (!is_automorph(lattice, u))
        fail(ErrorKind::domain, "matrix is not an isometry of the lattice");
    const std::size_t k = form.generator_count();
    const std::size_t n = lattice.rank();
    IntMatrix action(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Rational> image(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                image[l] += form.generators[i][j] * u(j, l);
        std::vector<Integer> coords = form.coordinates_of(image);
        for (std::size_t j = 0; j < k; ++j)
            action(i, j) = coords[j];
    }
    return normalize_action(form, std::move(action));
}

Integer disc_action(const GramLattice& lattice, const IntMatrix& u) {
    FiniteQuadForm form = disc_form(lattice);
    if (form.generator_count() > 1)
        fail(ErrorKind::domain, "discriminant group is not cyclic; use matrix action");
    if (form.generator_count() == 0)
        return 1;
    return disc_action_matrix(lattice, form, u).action(0, 0);
}

bool glue_uniqueness(const GramLattice& lattice, std::uint64_t bound) {
    FiniteQuadForm form = disc_form(lattice);
    std::vector<DiscAutomorphism> full = disc_orthogonal_group(form, bound);
    AutomorphismGenerators gens = automorphism_generators(lattice);
    std::set<DiscAutomorphism> images;
    for (const auto& g : gens.generators)
        images.insert(disc_action_matrix(lattice, form, g));
    // closure under composition (finite group)
    std::set<DiscAutomorphism> group;
    std::vector<DiscAutomorphism> frontier;
    DiscAutomorphism id = normalize_action(form, IntMatrix::identity(form.generator_count()));
    group.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        DiscAutomorphism cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : images) {
            DiscAutomorphism next = compose(form, cur, g);
            if (group.insert(next).second)
                frontier.push_back(next);
        }
    }
    for (const auto& a : group)
        if (!std::binary_search(full.begin(), full.end(), a))
            fail(ErrorKind::internal, "image of O(L) escapes the discriminant orthogonal group");
    return group.size() == full.size();
}

}  // namespace k3b
