// pbc: exact intersection-theory and sheaf-class calculus for blown-up
// Poisson surfaces.  Reads a JSON config, writes a JSON report.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pbc/config.hpp"
#include "pbc/report.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw pbc::config_error("cannot open output file: " + out_path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice and sheaf-class calculus for blown-up Poisson surfaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sheaf;
    std::string ops;
    std::string out_path;
    std::int64_t bound = 0;
    bool have_bound = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "path to the JSON config")->required();
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
    };
    auto add_bound = [&](CLI::App* cmd) {
        cmd->add_option("--bound", bound, "coefficient bound for the (-2)-class search")
            ->each([&](const std::string&) { have_bound = true; });
    };

    CLI::App* lattice = app.add_subcommand(
        "lattice", "intersection matrix, canonical class, exceptional components");
    add_common(lattice);
    add_bound(lattice);

    CLI::App* transform =
        app.add_subcommand("transform", "run a chain of class transports on a named sheaf");
    add_common(transform);
    transform->add_option("--sheaf", sheaf, "sheaf name from the config")->required();
    transform
        ->add_option("--ops", ops,
                     "comma- or semicolon-separated chain: pullback | shriek | minimal-lift | "
                     "twist <divisor> | pseudo-twist-up f<k> | pseudo-twist-down f<k>")
        ->required();

    CLI::App* resolve =
        app.add_subcommand("resolve", "blow up until the minimal lift leaves the anticanonical curve");
    add_common(resolve);
    resolve->add_option("--sheaf", sheaf, "sheaf name from the config")->required();

    CLI::App* rigidity = app.add_subcommand("rigidity", "index of rigidity and -2-class check");
    add_common(rigidity);
    rigidity->add_option("--sheaf", sheaf, "sheaf name from the config")->required();
    add_bound(rigidity);

    CLI::App* exceptional =
        app.add_subcommand("exceptional", "subsheaf lattice, maximal chains, hom/jet tables");
    add_common(exceptional);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const pbc::Config cfg = pbc::load_config(config_path);
        std::optional<pbc::Int> bound_opt;
        if (have_bound) {
            if (bound < 1) throw pbc::config_error("--bound must be >= 1");
            bound_opt = bound;
        }
        pbc::Json report;
        if (lattice->parsed())
            report = pbc::lattice_report(cfg, bound_opt);
        else if (transform->parsed())
            report = pbc::transform_report(cfg, sheaf, ops);
        else if (resolve->parsed())
            report = pbc::resolve_report(cfg, sheaf);
        else if (rigidity->parsed())
            report = pbc::rigidity_report(cfg, sheaf, bound_opt);
        else
            report = pbc::exceptional_report(cfg);
        write_output(pbc::render_report(report), out_path);
        return 0;
    } catch (const pbc::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const pbc::size_error& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 4;
    } catch (const pbc::math_error& e) {
        std::cerr << "mathematical inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
