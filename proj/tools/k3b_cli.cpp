#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "k3b/k3b.h"

namespace {

constexpr const char* grammar =
    "usage: k3b [--format json|table] [--budget N] [--disc-bound N] [--out PATH] <command>\n"
    "  classify --p P --d D [--i I --lambda CSV]\n"
    "  counts --p P --d D [--brute --toy-rank M]\n"
    "  kappa --d D --p P --b B --c C\n"
    "  isom --gram-a JSON --gram-b JSON\n"
    "  pell --D N --n M\n"
    "  disc --gram JSON | --file PATH\n"
    "  fiber --d D --p P\n"
    "  fm --n N\n"
    "  theta --b B --c C\n"
    "  paper-suite\n"
    "environment: K3B_BUDGET sets the enumeration budget when --budget is absent\n";

using Context = std::unique_ptr<k3b_context, decltype(&k3b_context_free)>;

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int exit_code(k3b_status s) {
    if (s == K3B_OK)
        return 0;
    return s == K3B_ERR_USAGE ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer classes and Picard lattices of K3 surfaces"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "table", out_path;
    std::uint64_t budget = 0, disc_bound = 0;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--budget", budget, "enumeration budget")->envname("K3B_BUDGET")->check(CLI::PositiveNumber);
    app.add_option("--disc-bound", disc_bound, "discriminant group enumeration bound")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "write output to a file");

    std::string p, d, i, lambda, b, c, gram_a, gram_b, D, n, gram, file;
    bool brute = false;
    unsigned toy_rank = 0;

    auto classify = app.add_subcommand("classify", "label a p-torsion Brauer class");
    classify->add_option("--p", p)->required();
    classify->add_option("--d", d)->required();
    classify->add_option("--i", i);
    classify->add_option("--lambda", lambda, "comma separated coordinates");

    auto counts = app.add_subcommand("counts", "sublattice counts per lemma case");
    counts->add_option("--p", p)->required();
    counts->add_option("--d", d)->required();
    counts->add_flag("--brute", brute);
    counts->add_option("--toy-rank", toy_rank)->check(CLI::Range(2u, 20u));

    auto kappa = app.add_subcommand("kappa", "Picard lattice of the image surface");
    kappa->add_option("--d", d)->required();
    kappa->add_option("--p", p)->required();
    kappa->add_option("--b", b)->required();
    kappa->add_option("--c", c)->required();

    auto isom = app.add_subcommand("isom", "isometry test for binary lattices");
    isom->add_option("--gram-a", gram_a)->required();
    isom->add_option("--gram-b", gram_b)->required();

    auto pell = app.add_subcommand("pell", "solve r^2 - D s^2 = +-n");
    pell->add_option("--D", D)->required();
    pell->add_option("--n", n)->required();

    auto disc = app.add_subcommand("disc", "discriminant form of a lattice");
    auto gram_opt = disc->add_option("--gram", gram);
    auto file_opt = disc->add_option("--file", file)->check(CLI::ExistingFile);
    gram_opt->excludes(file_opt);
    disc->require_option(1);

    auto fiber = app.add_subcommand("fiber", "degree of the kappa map");
    fiber->add_option("--d", d)->required();
    fiber->add_option("--p", p)->required();

    auto fm = app.add_subcommand("fm", "Fourier-Mukai partner count");
    fm->add_option("--n", n)->required();

    auto theta = app.add_subcommand("theta", "theta type of the vanishing class (d = 1, p = 2)");
    theta->add_option("--b", b)->required();
    theta->add_option("--c", c)->required();

    auto suite = app.add_subcommand("paper-suite", "run the reference cases and emit the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << grammar;
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << grammar;
        return 2;
    }

    Context ctx(k3b_context_new(), &k3b_context_free);
    if (!ctx) {
        std::cerr << "error: out of memory\n";
        return 1;
    }
    k3b_set_format(ctx.get(), format == "json" ? K3B_FORMAT_JSON : K3B_FORMAT_TABLE);
    if (budget)
        k3b_set_enumeration_budget(ctx.get(), budget);
    if (disc_bound)
        k3b_set_disc_enum_bound(ctx.get(), disc_bound);

    if (*counts && toy_rank % 2 != 0) {
        std::cerr << "error: --toy-rank must be even\n" << grammar;
        return 2;
    }

    k3b_status status = K3B_ERR_USAGE;
    int all_match = 1;
    if (*classify) {
        status = k3b_classify(ctx.get(), p.c_str(), d.c_str(), opt(i), opt(lambda));
    } else if (*counts) {
        status = k3b_counts(ctx.get(), p.c_str(), d.c_str(), brute ? 1 : 0, toy_rank);
    } else if (*kappa) {
        status = k3b_kappa(ctx.get(), d.c_str(), p.c_str(), b.c_str(), c.c_str());
    } else if (*isom) {
        status = k3b_isom(ctx.get(), gram_a.c_str(), gram_b.c_str());
    } else if (*pell) {
        status = k3b_pell(ctx.get(), D.c_str(), n.c_str());
    } else if (*disc) {
        if (!file.empty()) {
            std::ifstream in(file);
            std::stringstream ss;
            ss << in.rdbuf();
            if (!in) {
                std::cerr << "error: cannot read " << file << "\n";
                return 1;
            }
            gram = ss.str();
        }
        status = k3b_disc(ctx.get(), gram.c_str());
    } else if (*fiber) {
        status = k3b_fiber(ctx.get(), d.c_str(), p.c_str());
    } else if (*fm) {
        status = k3b_fm(ctx.get(), n.c_str());
    } else if (*theta) {
        status = k3b_theta(ctx.get(), b.c_str(), c.c_str());
    } else if (*suite) {
        status = k3b_paper_suite(ctx.get(), &all_match);
    }

    if (status != K3B_OK) {
        std::cerr << "error: " << k3b_last_error(ctx.get()) << "\n";
        if (status == K3B_ERR_USAGE)
            std::cerr << grammar;
        return exit_code(status);
    }

    const char* text = k3b_output(ctx.get());
    if (out_path.empty()) {
        std::fputs(text, stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
        out.close();
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
    }
    return all_match ? 0 : 1;
}
