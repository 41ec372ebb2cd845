#include "k3b/serialize.hpp"

#include <sstream>

namespace k3b {

namespace {

Json small_int(const Integer& n) {
    if (n.fits_slong_p())
        return Json(n.get_si());
    return Json(n.get_str());
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const Integer& n) { return Json(n.get_str()); }

Integer integer_from_json(const Json& j) {
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned())
        return Integer(std::to_string(j.get<unsigned long long>()));
    fail(ErrorKind::parse, "expected an integer, got " + j.dump());
}

Json to_json(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return Json::array({c.get_num().get_str(), c.get_den().get_str()});
}

Rational rational_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        fail(ErrorKind::parse, "expected [num, den], got " + j.dump());
    Integer den = integer_from_json(j[1]);
    if (sgn(den) == 0)
        fail(ErrorKind::parse, "zero denominator");
    Rational r(integer_from_json(j[0]), den);
    r.canonicalize();
    return r;
}

Json matrix_to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

IntMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        fail(ErrorKind::parse, "matrix must be a nonempty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        fail(ErrorKind::parse, "matrix rows must be nonempty arrays");
    const std::size_t cols = j[0].size();
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            fail(ErrorKind::parse, "ragged matrix");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = integer_from_json(j[r][c]);
    }
    return m;
}

Json gram_to_json(const GramLattice& l) { return matrix_to_json(l.gram()); }

GramLattice gram_from_json(const Json& j) {
    IntMatrix m = matrix_from_json(j);
    if (!m.is_square())
        fail(ErrorKind::parse, "Gram matrix must be square");
    return GramLattice(std::move(m));
}

GramLattice gram_from_string(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::parse, "invalid JSON: " + text);
    return gram_from_json(j);
}

Json disc_to_json(const FiniteQuadForm& f) {
    Json orders = Json::array();
    for (const auto& o : f.cyclic_orders)
        orders.push_back(small_int(o));
    Json q = Json::array();
    for (const auto& row : f.q_matrix)
        for (const auto& v : row) {
            Rational c = v;
            c.canonicalize();
            q.push_back(Json::array({small_int(c.get_num()), small_int(c.get_den())}));
        }
    return Json{{"orders", orders}, {"q", q}};
}

FiniteQuadForm disc_from_json(const Json& j) {
    FiniteQuadForm f;
    for (const auto& o : field(j, "orders"))
        f.cyclic_orders.push_back(integer_from_json(o));
    const std::size_t k = f.cyclic_orders.size();
    const Json& q = field(j, "q");
    if (!q.is_array() || q.size() != k * k)
        fail(ErrorKind::parse, "q must hold orders^2 entries");
    f.q_matrix.assign(k, std::vector<Rational>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            f.q_matrix[a][b] = rational_from_json(q[a * k + b]);
    return f;
}

Json pell_to_json(const PellResult& r) {
    Json out;
    out["solvable"] = r.solvable;
    if (r.witness) {
        out["r"] = to_json(r.witness->r);
        out["s"] = to_json(r.witness->s);
        out["sign"] = r.witness->sign == PellSign::plus ? "+" : "-";
    } else {
        out["r"] = nullptr;
        out["s"] = nullptr;
        out["sign"] = nullptr;
    }
    auto side = [](const std::optional<PellWitness>& w) -> Json {
        if (!w)
            return nullptr;
        return Json{{"r", to_json(w->r)}, {"s", to_json(w->s)}};
    };
    out["plus"] = side(r.plus);
    out["minus"] = side(r.minus);
    out["search_bound"] = to_json(r.search_bound);
    return out;
}

PellResult pell_from_json(const Json& j) {
    PellResult r;
    r.solvable = field(j, "solvable").get<bool>();
    if (r.solvable) {
        const std::string sign = field(j, "sign").get<std::string>();
        if (sign != "+" && sign != "-")
            fail(ErrorKind::parse, "sign must be '+' or '-'");
        r.witness = PellWitness{integer_from_json(field(j, "r")), integer_from_json(field(j, "s")),
                                sign == "+" ? PellSign::plus : PellSign::minus};
    }
    auto side = [&](const char* key, PellSign sign) -> std::optional<PellWitness> {
        if (!j.contains(key) || j.at(key).is_null())
            return std::nullopt;
        return PellWitness{integer_from_json(field(j.at(key), "r")), integer_from_json(field(j.at(key), "s")), sign};
    };
    r.plus = side("plus", PellSign::plus);
    r.minus = side("minus", PellSign::minus);
    if (j.contains("search_bound"))
        r.search_bound = integer_from_json(j.at("search_bound"));
    return r;
}

Json counts_to_json(const CountTable& t) {
    Json out = Json::array();
    for (const auto& row : t)
        out.push_back(Json{{"case", to_string(row.lemma_case)}, {"count", to_json(row.count)}, {"k3_type", row.k3_type}});
    return out;
}

CountTable counts_from_json(const Json& j) {
    if (!j.is_array())
        fail(ErrorKind::parse, "count table must be an array");
    CountTable t;
    for (const auto& row : j)
        t.push_back(CountRow{parse_lemma_case(field(row, "case").get<std::string>()),
                             integer_from_json(field(row, "count")), field(row, "k3_type").get<bool>()});
    return t;
}

Json invariants_to_json(const ClassInvariants& inv) {
    Json orders = Json::array();
    for (const auto& o : inv.disc_orders)
        orders.push_back(small_int(o));
    Json out;
    out["bh"] = to_json(inv.bh);
    out["c_alpha"] = to_json(inv.c_alpha);
    out["lambda_sq"] = to_json(inv.lambda_sq);
    out["bsq"] = Json{{"value", to_json(inv.bsq.value)}, {"quotient", to_string(inv.bsq.quotient)}};
    out["disc_orders"] = orders;
    out["qr_flag"] = inv.qr_flag ? Json(*inv.qr_flag) : Json(nullptr);
    return out;
}

Json label_to_json(const ClassLabel& l) {
    return Json{{"case", to_string(l.lemma_case)},
                {"k3_type", l.k3_type},
                {"theta_tag", l.theta_tag ? Json(to_string(*l.theta_tag)) : Json(nullptr)}};
}

ClassLabel label_from_json(const Json& j) {
    ClassLabel l{parse_lemma_case(field(j, "case").get<std::string>()), field(j, "k3_type").get<bool>(), std::nullopt};
    const Json& t = field(j, "theta_tag");
    if (!t.is_null()) {
        const std::string s = t.get<std::string>();
        for (ThetaTag tag : {ThetaTag::order_two_point, ThetaTag::even_theta, ThetaTag::odd_theta})
            if (to_string(tag) == s)
                l.theta_tag = tag;
        if (!l.theta_tag)
            fail(ErrorKind::parse, "unknown theta tag '" + s + "'");
    }
    return l;
}

Json theta_to_json(const ThetaType& t) {
    Json parity = nullptr;
    if (t.sum_even)
        parity = *t.sum_even ? "even" : "odd";
    return Json{{"kind", to_string(t.kind)}, {"equals_alpha_x", t.equals_alpha_x}, {"sum_parity", parity}};
}

Json kappa_to_json(const SurfaceParams& s) {
    GramLattice pic_s = kappa_pic(s);
    Json out;
    out["pic_X"] = gram_to_json(pic_x(s));
    out["pic_S"] = gram_to_json(pic_s);
    out["det_X"] = to_json(det_pic_x(s));
    out["det_S"] = to_json(pic_s.det());
    out["alpha_eq_vanishing"] = alpha_x_equals_vanishing(s);
    out["theta"] = (s.d == 1 && s.p == 2) ? theta_to_json(theta_type(s.b, s.c)) : Json(nullptr);
    out["fiber_degree"] = to_json(fiber_degree(s.d, s.p));
    return out;
}

std::string format_matrix(const IntMatrix& m) { return m.str(); }

std::string format_rational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace k3b
