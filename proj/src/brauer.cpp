#include "k3b/brauer.hpp"

#include <bit>
#include <map>

namespace k3b {

namespace {

void require_prime(const Integer& p) {
    if (!is_prime(p))
        fail(ErrorKind::domain, "p must be prime, got " + p.get_str());
}

void require_degree(const Integer& d) {
    if (sgn(d) <= 0)
        fail(ErrorKind::domain, "d must be positive, got " + d.get_str());
}

void require_unimodular_rank(std::size_t rank) {
    if (rank != 2 && rank != 4 && rank != 12 && rank != 20)
        fail(ErrorKind::domain, "rank must be 2, 4, 12 or 20 (unimodular block), got " + std::to_string(rank));
}

bool divides(const Integer& p, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0; }

std::vector<LemmaCase> table_cases(const Integer& p, const Integer& d) {
    if (!divides(p, d))
        return {LemmaCase::A_i, LemmaCase::A_ii, LemmaCase::A_iii};
    if (p == 2)
        return {LemmaCase::B_i, LemmaCase::B_ii, LemmaCase::B_iii};
    return {LemmaCase::B_i, LemmaCase::B_ii, LemmaCase::B_iii, LemmaCase::B_iv};
}

CountTable make_table(const Integer& p, const Integer& d, const std::map<LemmaCase, Integer>& counts) {
    CountTable out;
    for (LemmaCase c : table_cases(p, d)) {
        auto it = counts.find(c);
        out.push_back(CountRow{c, it == counts.end() ? Integer(0) : it->second, is_k3_type(p, c)});
    }
    return out;
}

// p = 2 rules. d odd: bh = 0 -> A_i, else B^2 decides A_ii / A_iii.
// d even: bh = 1/2 -> B_iii, else B^2 decides B_i / B_ii.
LemmaCase rule_p2(bool d_odd, bool bh_half, bool bsq_half) {
    if (d_odd) {
        if (!bh_half)
            return LemmaCase::A_i;
        return bsq_half ? LemmaCase::A_iii : LemmaCase::A_ii;
    }
    if (bh_half)
        return LemmaCase::B_iii;
    return bsq_half ? LemmaCase::B_ii : LemmaCase::B_i;
}

// p odd rules on (i, c). p | d: i != 0 -> B_iv, else c decides. p does not
// divide d: Legendre(i^2 + 4dc) = 1, -1, 0 -> A_i, A_ii, A_iii.
LemmaCase rule_odd(const Integer& p, const Integer& d, const Integer& i, const Integer& c) {
    if (divides(p, d)) {
        if (!divides(p, i))
            return LemmaCase::B_iv;
        int l = legendre(mod_floor(c, p), p);
        if (l == 0)
            return LemmaCase::B_iii;
        return l > 0 ? LemmaCase::B_i : LemmaCase::B_ii;
    }
    int l = legendre(mod_floor(i * i + 4 * d * c, p), p);
    if (l == 0)
        return LemmaCase::A_iii;
    return l > 0 ? LemmaCase::A_i : LemmaCase::A_ii;
}

ClassLabel make_label(const AlphaParam& a, LemmaCase c) {
    ClassLabel out{c, is_k3_type(a.p, c), std::nullopt};
    if (a.p == 2 && a.d == 1) {
        if (c == LemmaCase::A_i)
            out.theta_tag = ThetaTag::order_two_point;
        else if (c == LemmaCase::A_ii)
            out.theta_tag = ThetaTag::even_theta;
        else
            out.theta_tag = ThetaTag::odd_theta;
    }
    return out;
}

void validate(const AlphaParam& a) {
    require_prime(a.p);
    require_degree(a.d);
    if (a.lambda.size() > 20 || a.lambda.size() % 2 != 0)
        fail(ErrorKind::domain, "lambda must have even length at most 20");
    bool zero = divides(a.p, a.i);
    for (const auto& x : a.lambda)
        zero = zero && divides(a.p, x);
    if (zero)
        fail(ErrorKind::domain, "zero class");
}

std::vector<Integer> lifted_lambda(const AlphaParam& a) {
    std::vector<Integer> out;
    out.reserve(a.lambda.size());
    for (const auto& x : a.lambda)
        out.push_back(mod_floor(x, a.p));
    return out;
}

Integer lambda_norm(const AlphaParam& a) {
    return lambda_prime_block(a.lambda.size()).norm(lifted_lambda(a));
}

Integer c_of(const AlphaParam& a) { return mod_floor(-lambda_norm(a) / 2, a.p); }

// Number of invariant factors divisible by p.
std::size_t p_rank(const FiniteQuadForm& f, const Integer& p) {
    std::size_t n = 0;
    for (const auto& o : f.cyclic_orders)
        n += divides(p, o) ? 1 : 0;
    return n;
}

// q(v) = a / n mod 2 for a generator v of a cyclic group of order n; returns a mod 2n.
Integer q_numerator(const FiniteQuadForm& f) {
    const Integer& n = f.cyclic_orders.at(0);
    Rational num = f.q_matrix[0][0] * n;
    num.canonicalize();
    if (num.get_den() != 1)
        fail(ErrorKind::internal, "q(v) has unexpected denominator");
    return mod_floor(num.get_num(), 2 * n);
}

}  // namespace

Rational TaggedRational::reduced(const Integer& p) const {
    switch (quotient) {
    case Quotient::mod_Z:
        return mod_rational(value, 1);
    case Quotient::mod_inv_p_Z: {
        Rational scaled = value * p;
        Integer fl = floor_div(scaled.get_num(), scaled.get_den());
        Rational out = value - Rational(fl) / p;
        out.canonicalize();
        return out;
    }
    case Quotient::representative_only:
        break;
    }
    return value;
}

std::string to_string(LemmaCase c) {
    switch (c) {
    case LemmaCase::A_i: return "A_i";
    case LemmaCase::A_ii: return "A_ii";
    case LemmaCase::A_iii: return "A_iii";
    case LemmaCase::B_i: return "B_i";
    case LemmaCase::B_ii: return "B_ii";
    case LemmaCase::B_iii: return "B_iii";
    case LemmaCase::B_iv: return "B_iv";
    }
    return "?";
}

std::string to_string(ThetaTag t) {
    switch (t) {
    case ThetaTag::order_two_point: return "order_two_point";
    case ThetaTag::even_theta: return "even_theta";
    case ThetaTag::odd_theta: return "odd_theta";
    }
    return "?";
}

std::string to_string(Quotient q) {
    switch (q) {
    case Quotient::mod_Z: return "mod_Z";
    case Quotient::mod_inv_p_Z: return "mod_1/pZ";
    case Quotient::representative_only: return "representative_only";
    }
    return "?";
}

LemmaCase parse_lemma_case(const std::string& s) {
    for (LemmaCase c : {LemmaCase::A_i, LemmaCase::A_ii, LemmaCase::A_iii, LemmaCase::B_i, LemmaCase::B_ii,
                        LemmaCase::B_iii, LemmaCase::B_iv})
        if (to_string(c) == s)
            return c;
    fail(ErrorKind::parse, "unknown lemma case '" + s + "'");
}

bool is_k3_type(const Integer& p, LemmaCase c) {
    if (p == 2)
        return c == LemmaCase::A_ii || c == LemmaCase::B_iii;
    return c == LemmaCase::A_i || c == LemmaCase::B_iv;
}

GramLattice transcendental_model(const Integer& d, std::size_t m) {
    require_degree(d);
    IntMatrix t(1, 1);
    t(0, 0) = -2 * d;
    return GramLattice(block_diagonal({t, lambda_prime_block(m).gram()}));
}

std::vector<Integer> alpha_functional(const AlphaParam& a) {
    const GramLattice block = lambda_prime_block(a.lambda.size());
    std::vector<Integer> lam = lifted_lambda(a);
    std::vector<Integer> f;
    f.reserve(lam.size() + 1);
    f.push_back(mod_floor(a.i, a.p));
    for (std::size_t j = 0; j < lam.size(); ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < lam.size(); ++k)
            s += block(j, k) * lam[k];
        f.push_back(mod_floor(s, a.p));
    }
    return f;
}

ClassInvariants alpha_invariants(const AlphaParam& a) {
    validate(a);
    ClassInvariants out;
    out.bh = mod_rational(Rational(-a.i, a.p), 1);
    Integer norm = lambda_norm(a);
    out.lambda_sq = norm;
    out.c_alpha = mod_floor(-norm / 2, a.p);
    Rational bsq(norm, a.p * a.p);
    bsq.canonicalize();
    Quotient tag = Quotient::representative_only;
    const bool d_odd = !divides(2, a.d);
    if (a.p == 2) {
        const bool bh_half = !divides(2, a.i);
        if ((d_odd && bh_half) || (!d_odd && !bh_half))
            tag = Quotient::mod_Z;
    } else if (divides(a.p, a.d) && divides(a.p, a.i)) {
        tag = Quotient::mod_inv_p_Z;
    }
    out.bsq = TaggedRational{bsq, tag};

    GramLattice kernel = kernel_sublattice(transcendental_model(a.d, a.lambda.size()), alpha_functional(a), a.p);
    FiniteQuadForm form = disc_form(kernel);
    out.disc_orders = form.cyclic_orders;
    if (a.p != 2) {
        if (!divides(a.p, a.d) && form.is_cyclic()) {
            int l = legendre(mod_floor(-q_numerator(form), a.p), a.p);
            out.qr_flag = l > 0;
        } else if (divides(a.p, a.d) && p_rank(form, a.p) == 2) {
            out.qr_flag = legendre(out.c_alpha, a.p) > 0;
        }
    }
    return out;
}

ClassLabel classify_fast(const AlphaParam& a) {
    validate(a);
    if (a.p == 2) {
        const bool bh_half = !divides(2, a.i);
        // B^2 = lambda^2 / 4; half-integral iff lambda^2 / 2 is odd
        const bool bsq_half = !divides(2, lambda_norm(a) / 2);
        return make_label(a, rule_p2(!divides(2, a.d), bh_half, bsq_half));
    }
    return make_label(a, rule_odd(a.p, a.d, mod_floor(a.i, a.p), c_of(a)));
}

ClassLabel classify_first_principles(const AlphaParam& a) {
    validate(a);
    GramLattice kernel = kernel_sublattice(transcendental_model(a.d, a.lambda.size()), alpha_functional(a), a.p);
    FiniteQuadForm form = disc_form(kernel);
    if (form.order() != 2 * a.p * a.p * a.d)
        fail(ErrorKind::internal, "kernel discriminant has wrong order");
    const bool d_odd = !divides(2, a.d);
    if (a.p == 2) {
        if (d_odd) {
            if (!form.is_cyclic())
                return make_label(a, LemmaCase::A_i);
            // A_ii iff the form is that of <-8d>: q(v) = -u^2 / (8d)
            const Integer n = 8 * a.d;
            const Integer num = q_numerator(form);
            for (Integer u = 1; u < n; u += 2)
                if (gcd(u, n) == 1 && mod_floor(-u * u, 2 * n) == num)
                    return make_label(a, LemmaCase::A_ii);
            return make_label(a, LemmaCase::A_iii);
        }
        if (form.is_cyclic())
            return make_label(a, LemmaCase::B_iii);
        // B_ii iff some 2-torsion element has q outside Z
        const std::size_t k = form.generator_count();
        std::vector<Integer> halves(k);
        for (std::size_t j = 0; j < k; ++j)
            halves[j] = divides(2, form.cyclic_orders[j]) ? form.cyclic_orders[j] / 2 : Integer(0);
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<Integer> coeffs(k, Integer(0));
            for (std::size_t j = 0; j < k; ++j)
                if (mask & (1u << j))
                    coeffs[j] = halves[j];
            Rational q = form.q_value(coeffs);
            if (q.get_den() != 1)
                return make_label(a, LemmaCase::B_ii);
        }
        return make_label(a, LemmaCase::B_i);
    }
    const std::size_t pr = p_rank(form, a.p);
    if (!divides(a.p, a.d)) {
        if (!form.is_cyclic())
            return make_label(a, LemmaCase::A_iii);
        // -2 d p^2 q(v) = -num mod p
        int l = legendre(mod_floor(-q_numerator(form), a.p), a.p);
        if (l == 0)
            fail(ErrorKind::internal, "q(v) not a unit");
        return make_label(a, l > 0 ? LemmaCase::A_i : LemmaCase::A_ii);
    }
    if (pr == 1)
        return make_label(a, LemmaCase::B_iv);
    if (pr == 3)
        return make_label(a, LemmaCase::B_iii);
    if (pr != 2)
        fail(ErrorKind::internal, "unexpected discriminant shape");
    int l = legendre(c_of(a), a.p);
    if (l == 0)
        fail(ErrorKind::internal, "c_alpha vanishes on a B_i/B_ii class");
    return make_label(a, l > 0 ? LemmaCase::B_i : LemmaCase::B_ii);
}

ClassLabel classify(const AlphaParam& a) {
    if (a.p == 2)
        return classify_fast(a);
    return classify_first_principles(a);
}

CountTable count_classes(const Integer& p, const Integer& d, std::size_t rank) {
    require_prime(p);
    require_degree(d);
    require_unimodular_rank(rank);
    const unsigned long k = rank / 2;
    const Integer pk = pow_ui(p, k);
    const Integer pk1 = pow_ui(p, k - 1);
    const Integer p2k = pk * pk;
    std::map<LemmaCase, Integer> c;
    if (p == 2) {
        if (!divides(p, d)) {
            c[LemmaCase::A_i] = p2k - 1;
            c[LemmaCase::A_ii] = pk1 * (pk + 1);
            c[LemmaCase::A_iii] = pk1 * (pk - 1);
        } else {
            c[LemmaCase::B_i] = pk1 * (pk + 1) - 1;
            c[LemmaCase::B_ii] = pk1 * (pk - 1);
            c[LemmaCase::B_iii] = p2k;
        }
    } else if (!divides(p, d)) {
        c[LemmaCase::A_i] = pk * (pk + 1) / 2;
        c[LemmaCase::A_ii] = pk * (pk - 1) / 2;
        c[LemmaCase::A_iii] = (p2k - 1) / (p - 1);
    } else {
        c[LemmaCase::B_i] = pk1 * (pk - 1) / 2;
        c[LemmaCase::B_ii] = pk1 * (pk - 1) / 2;
        c[LemmaCase::B_iii] = (pk1 + 1) * (pk - 1) / (p - 1);
        c[LemmaCase::B_iv] = p2k;
    }
    return make_table(p, d, c);
}

namespace {

CountTable brute_p2(const Integer& d, std::size_t m) {
    const GramLattice block = lambda_prime_block(m);
    std::vector<std::uint32_t> odd_cols(m, 0);
    std::vector<unsigned> half_diag(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i)
            if (mpz_odd_p(block(i, j).get_mpz_t()))
                odd_cols[j] |= std::uint32_t{1} << i;
        half_diag[j] = mpz_odd_p(Integer(block(j, j) / 2).get_mpz_t()) ? 1u : 0u;
    }
    const bool d_odd = mpz_odd_p(d.get_mpz_t()) != 0;
    std::map<LemmaCase, std::uint64_t> raw;
    std::uint32_t lambda = 0;
    unsigned q = 0;  // lambda^2 / 2 mod 2
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t step = 0; step < total; ++step) {
        if (step > 0) {
            // Gray code: flip bit j = ctz(step)
            const unsigned j = static_cast<unsigned>(std::countr_zero(step));
            q ^= half_diag[j] ^ (static_cast<unsigned>(std::popcount(lambda & odd_cols[j])) & 1u);
            lambda ^= std::uint32_t{1} << j;
        }
        if (lambda != 0)
            ++raw[rule_p2(d_odd, false, q != 0)];
        ++raw[rule_p2(d_odd, true, q != 0)];
    }
    std::map<LemmaCase, Integer> c;
    for (const auto& [k, v] : raw)
        c[k] = Integer(std::to_string(v));
    return make_table(Integer(2), d, c);
}

CountTable brute_odd(const Integer& p, const Integer& d, std::size_t m) {
    const unsigned long pp = to_ulong(p, "p");
    std::vector<unsigned long> digits(m + 1, 0);
    std::map<LemmaCase, Integer> c;
    AlphaParam a{p, d, 0, std::vector<Integer>(m, Integer(0))};
    for (;;) {
        std::size_t pos = 0;
        while (pos <= m && digits[pos] + 1 == pp) {
            digits[pos] = 0;
            ++pos;
        }
        if (pos > m)
            break;
        ++digits[pos];
        a.i = digits[0];
        for (std::size_t j = 0; j < m; ++j)
            a.lambda[j] = digits[j + 1];
        c[classify_first_principles(a).lemma_case] += 1;
    }
    for (auto& [k, v] : c) {
        if (!divides(p - 1, v))
            fail(ErrorKind::internal, "bucket size not divisible by p - 1");
        v /= p - 1;
    }
    return make_table(p, d, c);
}

}  // namespace

CountTable brute_force_counts(const Integer& p, const Integer& d, std::size_t toy_rank, std::uint64_t budget) {
    require_prime(p);
    require_degree(d);
    if (toy_rank == 0 || toy_rank > 20 || toy_rank % 2 != 0)
        fail(ErrorKind::domain, "toy rank must be even, between 2 and 20");
    const Integer need = pow_ui(p, toy_rank + 1);
    if (need > Integer(std::to_string(budget)))
        fail(ErrorKind::limit,
             "enumeration limit: needs budget " + need.get_str() + ", have " + std::to_string(budget));
    if (p == 2)
        return brute_p2(d, toy_rank);
    return brute_odd(p, d, toy_rank);
}

Integer quadric_count(const Integer& p, unsigned long m, const Integer& value, FormType type) {
    require_prime(p);
    if (m == 0)
        fail(ErrorKind::domain, "quadric_count needs m >= 1");
    const Integer top = pow_ui(p, 2 * m - 1);
    const Integer pm = pow_ui(p, m);
    const Integer pm1 = pow_ui(p, m - 1);
    const bool zero = divides(p, value);
    if (type == FormType::split)
        return zero ? Integer(top + pm - pm1) : Integer(top - pm1);
    return zero ? Integer(top - pm + pm1) : Integer(top + pm1);
}

CountTable predicted_counts(const Integer& p, const Integer& d, std::size_t rank) {
    require_prime(p);
    require_degree(d);
    require_unimodular_rank(rank);
    const unsigned long k = rank / 2;
    const unsigned long pp = to_ulong(p, "p");
    std::map<LemmaCase, Integer> c;
    // r runs over values of q(lambda) = lambda^2 / 2 mod p, so c_alpha = -r
    for (unsigned long i = 0; i < pp; ++i)
        for (unsigned long r = 0; r < pp; ++r) {
            Integer n = quadric_count(p, k, r, FormType::split);
            if (i == 0 && r == 0)
                n -= 1;
            if (sgn(n) == 0)
                continue;
            LemmaCase lc;
            if (p == 2)
                lc = rule_p2(!divides(2, d), i == 1, r == 1);
            else
                lc = rule_odd(p, d, Integer(i), Integer(-static_cast<long>(r)));
            c[lc] += n;
        }
    for (auto& [key, v] : c) {
        if (!divides(p - 1, v))
            fail(ErrorKind::internal, "predicted bucket not divisible by p - 1");
        v /= p - 1;
    }
    return make_table(p, d, c);
}

VanishingInvariants vanishing_invariants(const Integer& p, const Integer& b, const Integer& c) {
    require_prime(p);
    VanishingInvariants out;
    out.bh = mod_rational(Rational(b, p), 1);
    Rational bsq(2 * c, p * p);
    bsq.canonicalize();
    out.bsq = TaggedRational{bsq, Quotient::mod_Z};
    return out;
}

}  // namespace k3b
