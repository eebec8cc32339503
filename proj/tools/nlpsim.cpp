#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nlp/app/commands.hpp"

int main(int argc, char** argv) {
    using namespace nlp::app;
    CLI::App app{"Nonlocal drift-diffusion simulator and blow-up certificate"};
    app.require_subcommand(1);

    std::string sim_config, sim_out;
    auto* sim = app.add_subcommand("simulate", "run the solver from a JSON config");
    sim->add_option("--config", sim_config, "config path")->required();
    sim->add_option("--out", sim_out, "output directory (defaults to the config's output_dir)");

    CertifyArgs cert;
    std::string cert_out = "certificate.json";
    auto* cer = app.add_subcommand("certify", "build the lower-bound ladder and threshold report");
    cer->add_option("--dim", cert.dim, "dimension (2 or 3)");
    cer->add_option("--kmax", cert.kmax, "deepest ladder level");
    cer->add_option("--A", cert.A, "amplitude: auto, <x>A* or a number");
    cer->add_option("--a", cert.a, "Besov index");
    cer->add_option("--mode", cert.mode, "recursion_only | solver_coupled");
    cer->add_option("--out", cert_out, "report path");

    LemmasArgs lem;
    std::string lem_out;
    auto* lm = app.add_subcommand("lemmas", "kernel, Duhamel and stationarity quadrature sweeps");
    lm->add_option("--which", lem.which, "k_decay | duhamel | chandrasekhar")->required();
    lm->add_option("--out", lem_out, "CSV path")->required();
    lm->add_option("--dim", lem.dim, "dimension for chandrasekhar");
    lm->add_option("--panels", lem.panels, "coarse quadrature mesh");

    std::string cmp_config;
    auto* cmp = app.add_subcommand("compare-oracle", "spectral solver against the direct Picard oracle");
    cmp->add_option("--config", cmp_config, "config path with an oracle section")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::config;
    }

    if (*sim) {
        std::optional<std::filesystem::path> out;
        if (!sim_out.empty()) out = sim_out;
        return simulate(sim_config, out, std::cout, std::cerr);
    }
    if (*cer) {
        cert.out = cert_out;
        return certify(cert, std::cout, std::cerr);
    }
    if (*lm) {
        lem.out = lem_out;
        return lemmas(lem, std::cout, std::cerr);
    }
    return compare_oracle(cmp_config, std::cout, std::cerr);
}
