/**
 * Command-line driver: runs the verification campaigns and writes a text or
 * JSON report.  Exit code 0 when every selected check passes, 1 on failure,
 * 2 on usage errors.
 */
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qlens/report.hpp"

namespace {

qlens::CampaignOptions g_opt;
std::string g_format = "text";
std::string g_outfile;
std::string g_theta_token = "sqrt2";

double parse_theta(const std::string& tok) {
    if (tok == "sqrt2") return 1.4142135623730951;
    return std::stod(tok);
}

int emit(const qlens::Report& rep) {
    std::string payload =
        g_format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_text();
    if (g_outfile.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(g_outfile);
        out << payload;
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification driver for the glued quantum lens space"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("QLENS_SEED")) g_opt.seed = std::strtoull(env, nullptr, 10);

    app.add_option("--format", g_format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("-o,--output", g_outfile, "write the report to a file");
    app.add_option("--seed", g_opt.seed, "seed for randomized campaigns");

    auto* check = app.add_subcommand("check", "run a verification campaign");
    check->require_subcommand(1);
    check->fallthrough();

    int rc = -1;
    auto add_common = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("--beta", g_opt.betas, "charges to test")->delimiter(',');
    };

    auto* identities = check->add_subcommand("identities", "q-identities and confluence");
    identities->fallthrough();
    identities->add_option("--n-max", g_opt.nmax, "largest power-identity exponent");
    identities->callback([&] { rc = emit(qlens::run_identities(g_opt)); });

    auto* lens = check->add_subcommand("lens", "lens relations, basis, gauge data");
    add_common(lens);
    lens->add_option("--degree", g_opt.degree, "basis degree bound");
    lens->callback([&] { rc = emit(qlens::run_lens(g_opt)); });

    auto* galois = check->add_subcommand("galois", "canonical and translation map checks");
    add_common(galois);
    galois->add_option("--n-max", g_opt.galois_nmax, "translation-map window");
    galois->add_option("--degree", g_opt.galois_degree, "tensor degree bound");
    galois->callback([&] { rc = emit(qlens::run_galois(g_opt)); });

    auto* reps = check->add_subcommand("reps", "representation residuals and independence");
    add_common(reps);
    reps->add_option("--dim", g_opt.dim, "truncation size");
    reps->add_option("--p", g_opt.p, "disc parameter p");
    reps->add_option("--q", g_opt.q, "disc parameter q");
    reps->add_option("--theta", g_theta_token, "angle in radians, or the token sqrt2");
    reps->add_option("--tol", g_opt.tol, "residual tolerance");
    reps->callback([&] {
        g_opt.theta = parse_theta(g_theta_token);
        rc = emit(qlens::run_reps(g_opt));
    });

    auto* cover = check->add_subcommand("cover", "covering and gluing lemmas");
    cover->fallthrough();
    cover->add_option("--trials", g_opt.trials, "randomized instance count");
    cover->callback([&] { rc = emit(qlens::run_cover(g_opt)); });

    auto* all = check->add_subcommand("all", "every campaign");
    add_common(all);
    all->add_option("--trials", g_opt.trials, "randomized instance count");
    all->add_option("--dim", g_opt.dim, "truncation size");
    all->callback([&] {
        g_opt.theta = parse_theta(g_theta_token);
        rc = emit(qlens::run_all(g_opt));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return rc < 0 ? 2 : rc;
}
