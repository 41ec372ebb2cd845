#include "k3b/k3b.h"

#include <cstdlib>
#include <exception>
#include <functional>
#include <new>
#include <sstream>
#include <string>

#include "k3b/reference_cases.hpp"
#include "k3b/serialize.hpp"

struct k3b_context {
    std::uint64_t enumeration_budget = k3b::default_enumeration_budget;
    std::uint64_t disc_enum_bound = k3b::default_disc_enum_bound;
    k3b_format format = K3B_FORMAT_JSON;
    std::string output;
    std::string error;
};

struct k3b_lattice {
    k3b::GramLattice lattice;
};

namespace {

using k3b::Integer;
using k3b::Json;

// A rendered result: the JSON document plus its table form.
struct Result {
    Json json;
    std::string table;
};

k3b_status status_of(k3b::ErrorKind kind) {
    switch (kind) {
    case k3b::ErrorKind::domain: return K3B_ERR_DOMAIN;
    case k3b::ErrorKind::limit: return K3B_ERR_LIMIT;
    case k3b::ErrorKind::parse: return K3B_ERR_USAGE;
    case k3b::ErrorKind::internal: return K3B_ERR_INTERNAL;
    }
    return K3B_ERR_INTERNAL;
}

k3b_status run(k3b_context* ctx, const std::function<Result()>& body) {
    if (!ctx)
        return K3B_ERR_USAGE;
    ctx->output.clear();
    ctx->error.clear();
    try {
        Result r = body();
        ctx->output = ctx->format == K3B_FORMAT_JSON ? r.json.dump(2) + "\n" : r.table;
        return K3B_OK;
    } catch (const k3b::Error& e) {
        ctx->error = e.what();
        return status_of(e.kind());
    } catch (const nlohmann::json::exception& e) {
        ctx->error = std::string("malformed JSON: ") + e.what();
        return K3B_ERR_USAGE;
    } catch (const std::bad_alloc&) {
        ctx->error = "out of memory";
        return K3B_ERR_LIMIT;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return K3B_ERR_INTERNAL;
    }
}

Integer arg(const char* text, const char* name) {
    if (!text)
        k3b::fail(k3b::ErrorKind::parse, std::string("missing argument ") + name);
    return k3b::parse_integer(text);
}

std::vector<Integer> parse_csv(const std::string& csv) {
    std::vector<Integer> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(k3b::parse_integer(item));
    if (out.empty())
        k3b::fail(k3b::ErrorKind::parse, "empty lambda list");
    return out;
}

std::string counts_table(const k3b::CountTable& t) {
    std::ostringstream os;
    for (const auto& row : t)
        os << k3b::to_string(row.lemma_case) << "\t" << row.count.get_str() << "\t"
           << (row.k3_type ? "k3" : "-") << "\n";
    return os.str();
}

std::string line(const std::string& key, const std::string& value) { return key + "\t" + value + "\n"; }

std::string json_scalar(const Json& j) {
    if (j.is_null())
        return "-";
    return j.is_string() ? j.get<std::string>() : j.dump();
}

}  // namespace

extern "C" {

const char* k3b_version(void) { return "1.0.0"; }

k3b_context* k3b_context_new(void) { return new (std::nothrow) k3b_context(); }

void k3b_context_free(k3b_context* ctx) { delete ctx; }

k3b_status k3b_set_enumeration_budget(k3b_context* ctx, uint64_t budget) {
    if (!ctx || budget == 0)
        return K3B_ERR_USAGE;
    ctx->enumeration_budget = budget;
    return K3B_OK;
}

k3b_status k3b_set_disc_enum_bound(k3b_context* ctx, uint64_t bound) {
    if (!ctx || bound == 0)
        return K3B_ERR_USAGE;
    ctx->disc_enum_bound = bound;
    return K3B_OK;
}

k3b_status k3b_set_format(k3b_context* ctx, k3b_format format) {
    if (!ctx || (format != K3B_FORMAT_JSON && format != K3B_FORMAT_TABLE))
        return K3B_ERR_USAGE;
    ctx->format = format;
    return K3B_OK;
}

const char* k3b_last_error(const k3b_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

const char* k3b_output(const k3b_context* ctx) { return ctx ? ctx->output.c_str() : ""; }

k3b_status k3b_classify(k3b_context* ctx, const char* p, const char* d, const char* i, const char* lambda_csv) {
    return run(ctx, [&]() -> Result {
        const Integer P = arg(p, "p"), D = arg(d, "d");
        if (!i && !lambda_csv) {
            k3b::CountTable t = k3b::count_classes(P, D);
            return {Json{{"p", P.get_str()}, {"d", D.get_str()}, {"cases", k3b::counts_to_json(t)}}, counts_table(t)};
        }
        k3b::AlphaParam a{P, D, i ? k3b::parse_integer(i) : Integer(0),
                          lambda_csv ? parse_csv(lambda_csv) : std::vector<Integer>(20, Integer(0))};
        k3b::ClassLabel label = k3b::classify(a);
        k3b::ClassInvariants inv = k3b::alpha_invariants(a);
        Json out;
        out["p"] = P.get_str();
        out["d"] = D.get_str();
        out["rank"] = a.lambda.size();
        out["label"] = k3b::label_to_json(label);
        out["invariants"] = k3b::invariants_to_json(inv);
        std::string table = line("case", k3b::to_string(label.lemma_case)) +
                            line("k3_type", label.k3_type ? "true" : "false") +
                            line("theta_tag", label.theta_tag ? k3b::to_string(*label.theta_tag) : "-") +
                            line("bh", k3b::format_rational(inv.bh)) + line("c_alpha", inv.c_alpha.get_str()) +
                            line("bsq", k3b::format_rational(inv.bsq.value) + " " + k3b::to_string(inv.bsq.quotient));
        std::string orders;
        for (const auto& o : inv.disc_orders)
            orders += (orders.empty() ? "" : " ") + o.get_str();
        table += line("disc_orders", orders);
        return {out, table};
    });
}

k3b_status k3b_counts(k3b_context* ctx, const char* p, const char* d, int brute, unsigned toy_rank) {
    return run(ctx, [&]() -> Result {
        const Integer P = arg(p, "p"), D = arg(d, "d");
        const std::size_t rank = toy_rank == 0 ? 20 : toy_rank;
        const bool closed_ok = rank == 2 || rank == 4 || rank == 12 || rank == 20;
        Json out;
        out["p"] = P.get_str();
        out["d"] = D.get_str();
        out["rank"] = rank;
        k3b::CountTable t;
        if (brute) {
            t = k3b::brute_force_counts(P, D, rank, ctx->enumeration_budget);
            out["method"] = "brute_force";
        } else {
            if (!closed_ok)
                k3b::fail(k3b::ErrorKind::domain, "closed-form counts need rank 2, 4, 12 or 20");
            t = k3b::count_classes(P, D, rank);
            out["method"] = "closed_form";
        }
        out["rows"] = k3b::counts_to_json(t);
        std::string table = counts_table(t);
        if (brute && closed_ok) {
            const bool agrees = k3b::counts_to_json(k3b::count_classes(P, D, rank)) == out["rows"];
            out["closed_form_agrees"] = agrees;
            table += line("closed_form_agrees", agrees ? "true" : "false");
        }
        return {out, table};
    });
}

k3b_status k3b_kappa(k3b_context* ctx, const char* d, const char* p, const char* b, const char* c) {
    return run(ctx, [&]() -> Result {
        k3b::SurfaceParams s{arg(d, "d"), arg(p, "p"), arg(b, "b"), arg(c, "c")};
        Json out = k3b::kappa_to_json(s);
        std::string table;
        for (auto it = out.begin(); it != out.end(); ++it) {
            if (it.value().is_array())
                table += line(it.key(), k3b::matrix_from_json(it.value()).str());
            else if (it.value().is_object()) {
                std::string v;
                for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                    v += (v.empty() ? "" : " ") + jt.key() + "=" + json_scalar(jt.value());
                table += line(it.key(), v);
            } else
                table += line(it.key(), json_scalar(it.value()));
        }
        return {out, table};
    });
}

k3b_status k3b_isom(k3b_context* ctx, const char* gram_a, const char* gram_b) {
    return run(ctx, [&]() -> Result {
        if (!gram_a || !gram_b)
            k3b::fail(k3b::ErrorKind::parse, "two Gram matrices required");
        k3b::GramLattice a = k3b::gram_from_string(gram_a), b = k3b::gram_from_string(gram_b);
        auto w = k3b::is_isometric(a, b);
        Json out{{"isometric", w.has_value()}, {"witness", w ? k3b::matrix_to_json(*w) : Json(nullptr)}};
        std::string table = w ? "isometric\t" + w->str() + "\n" : std::string("not isometric\n");
        return {out, table};
    });
}

k3b_status k3b_pell(k3b_context* ctx, const char* D, const char* n) {
    return run(ctx, [&]() -> Result {
        k3b::PellResult r = k3b::pell_pm(arg(D, "D"), arg(n, "n"));
        std::string table = "unsolvable\n";
        if (r.witness)
            table = "solvable\tr=" + r.witness->r.get_str() + " s=" + r.witness->s.get_str() + " sign=" +
                    (r.witness->sign == k3b::PellSign::plus ? "+" : "-") + "\n";
        return {k3b::pell_to_json(r), table};
    });
}

k3b_status k3b_disc(k3b_context* ctx, const char* gram) {
    return run(ctx, [&]() -> Result {
        if (!gram)
            k3b::fail(k3b::ErrorKind::parse, "missing Gram matrix");
        k3b::FiniteQuadForm f = k3b::disc_form(k3b::gram_from_string(gram));
        std::string orders;
        for (const auto& o : f.cyclic_orders)
            orders += (orders.empty() ? "" : " ") + o.get_str();
        std::string q;
        for (const auto& row : f.q_matrix) {
            q += "[";
            for (std::size_t j = 0; j < row.size(); ++j)
                q += (j ? " " : "") + k3b::format_rational(row[j]);
            q += "]";
        }
        return {k3b::disc_to_json(f), line("orders", orders.empty() ? "-" : orders) + line("q", q.empty() ? "-" : q)};
    });
}

k3b_status k3b_fiber(k3b_context* ctx, const char* d, const char* p) {
    return run(ctx, [&]() -> Result {
        const Integer D = arg(d, "d"), P = arg(p, "p");
        const Integer deg = k3b::fiber_degree(D, P);
        const bool ok = k3b::fiber_consistency(D, P);
        Json out{{"d", D.get_str()}, {"p", P.get_str()}, {"fiber_degree", deg.get_str()}, {"consistent", ok}};
        return {out, line("fiber_degree", deg.get_str()) + line("consistent", ok ? "true" : "false")};
    });
}

k3b_status k3b_fm(k3b_context* ctx, const char* n) {
    return run(ctx, [&]() -> Result {
        const Integer N = arg(n, "n");
        const Integer count = k3b::fm_count(N);
        return {Json{{"n", N.get_str()}, {"count", count.get_str()}}, count.get_str() + "\n"};
    });
}

k3b_status k3b_theta(k3b_context* ctx, const char* b, const char* c) {
    return run(ctx, [&]() -> Result {
        k3b::ThetaType t = k3b::theta_type(arg(b, "b"), arg(c, "c"));
        Json out = k3b::theta_to_json(t);
        std::string table = line("kind", out["kind"].get<std::string>()) +
                            line("equals_alpha_x", t.equals_alpha_x ? "true" : "false") +
                            line("sum_parity", out["sum_parity"].is_null() ? "-" : out["sum_parity"].get<std::string>());
        return {out, table};
    });
}

k3b_status k3b_paper_suite(k3b_context* ctx, int* all_match) {
    return run(ctx, [&]() -> Result {
        k3b::SuiteConfig config;
        config.disc_enum_bound = ctx->disc_enum_bound;
        config.enumeration_budget = ctx->enumeration_budget;
        k3b::SuiteReport r = k3b::run_suite(config);
        if (all_match)
            *all_match = r.all_match ? 1 : 0;
        return {k3b::report_to_json(r), k3b::report_table(r)};
    });
}

k3b_status k3b_lattice_from_json(k3b_context* ctx, const char* gram, k3b_lattice** out) {
    if (!out)
        return K3B_ERR_USAGE;
    *out = nullptr;
    return run(ctx, [&]() -> Result {
        if (!gram)
            k3b::fail(k3b::ErrorKind::parse, "missing Gram matrix");
        k3b::GramLattice g = k3b::gram_from_string(gram);
        *out = new k3b_lattice{std::move(g)};
        return {Json{{"rank", (*out)->lattice.rank()}}, std::to_string((*out)->lattice.rank()) + "\n"};
    });
}

void k3b_lattice_free(k3b_lattice* lattice) { delete lattice; }

int k3b_lattice_rank(const k3b_lattice* lattice) { return lattice ? static_cast<int>(lattice->lattice.rank()) : -1; }

k3b_status k3b_lattice_det(k3b_context* ctx, const k3b_lattice* lattice) {
    return run(ctx, [&]() -> Result {
        if (!lattice)
            k3b::fail(k3b::ErrorKind::parse, "null lattice");
        const Integer det = lattice->lattice.det();
        return {Json{{"det", det.get_str()}}, det.get_str() + "\n"};
    });
}

}  // extern "C"
