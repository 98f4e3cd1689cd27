#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssrent/entanglement.hpp"
#include "ssrent/hilbert.hpp"
#include "ssrent/io.hpp"
#include "ssrent/schur.hpp"
#include "ssrent/ssr.hpp"

namespace {

using namespace ssrent;

// Exit codes: 0 success / covariant verdict, 1 numeric mismatch against the
// built-in expectations (or a non-covariant verdict), 2 input error.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInputError = 2;

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char ch : raw) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

void report_row(const std::string& label, const std::string& quantity, double value,
                const std::string& provenance) {
    std::cout << csv_field(label) << ',' << quantity << ',' << format_real(value) << ',' << provenance
              << '\n';
}

PureState split_particle() {
    PureState psi;
    psi.add_term(OccupationBasisVector{{0}, {1}}, 1.0);
    psi.add_term(OccupationBasisVector{{1}, {0}}, 1.0);
    return psi;
}

PureState bell_pair() {
    PureState psi;
    psi.add_term(OccupationBasisVector{{0, 1}, {1, 0}}, 1.0);
    psi.add_term(OccupationBasisVector{{1, 0}, {0, 1}}, 1.0);
    return psi;
}

PureState two_particles_vs_vacuum() {
    PureState psi;
    psi.add_term(OccupationBasisVector{{1, 1}, {0, 0}}, 1.0);
    psi.add_term(OccupationBasisVector{{0, 0}, {1, 1}}, 1.0);
    return psi;
}

int run_entropy(const std::string& path) {
    const PureState psi = load_state_file(path);
    std::cout << "label,quantity,value,provenance\n";
    report_row(path, "norm", std::sqrt(psi.norm2()), "amplitude_sum");
    report_row(path, "mode_entanglement", entanglement_entropy(psi), "reduced_state_entropy");
    report_row(path, "number_ssr_entanglement", constrained_entanglement_number(psi),
               "number_sector_sum");
    report_row(path, "alice_number_variance", alice_number_variance(psi), "occupation_moments");
    return kExitOk;
}

int run_table1() {
    struct Entry {
        std::string label;
        PureState state;
        double expected_mode;
        double expected_ssr;
    };
    const std::vector<Entry> entries = {
        {"2 split particles", tensor_pure(split_particle(), split_particle()), 2.0, 0.5},
        {"Bell pair", bell_pair(), 1.0, 1.0},
        {"|11,00>+|00,11>", two_particles_vs_vacuum(), 1.0, 0.0},
    };
    std::cout << "label,mode_entanglement,number_ssr_entanglement\n";
    bool mismatch = false;
    for (const auto& entry : entries) {
        const double mode = entanglement_entropy(entry.state);
        const double ssr = constrained_entanglement_number(entry.state);
        std::cout << csv_field(entry.label) << ',' << format_real(mode) << ',' << format_real(ssr)
                  << '\n';
        if (std::abs(mode - entry.expected_mode) > 1e-9 || std::abs(ssr - entry.expected_ssr) > 1e-9) {
            mismatch = true;
        }
    }
    return mismatch ? kExitMismatch : kExitOk;
}

int run_copies_scan(int max_c) {
    const auto rows = split_particle_copies_scan(max_c);
    std::cout << "C,e_exact,e_asymptotic,ratio\n";
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        std::cout << row.c << ',' << format_real(row.e_exact) << ',' << format_real(row.e_asymptotic)
                  << ',' << format_real(row.ratio) << '\n';
        if (i > 0 && row.ratio <= rows[i - 1].ratio) monotone = false;
    }
    std::cout << "# ratio_monotone=" << (monotone ? "true" : "false") << '\n';
    return kExitOk;
}

int run_ensemble(long long n, bool brute_force) {
    const double closed = ensemble_bell_closed_form(n);
    const std::string label = "N=" + std::to_string(n);
    std::cout << "label,quantity,value,provenance\n";
    report_row(label, "ssr_entanglement", closed, "sector_weight_sum");
    report_row(label, "per_molecule", closed / static_cast<double>(n), "sector_weight_sum");
    if (!brute_force) return kExitOk;

    const auto report = brute_force_ensemble_entanglement(static_cast<int>(n));
    report_row(label, "off_sector_mass", report.off_sector_mass, "joint_projector_residual");
    for (const auto& sector : report.sectors) {
        const std::string j = format_real(sector.j);
        report_row(label, "sector_weight_j=" + j, sector.weight, "spin_projector_trace");
        if (sector.recognized) {
            report_row(label, "sector_entanglement_j=" + j, sector.entanglement,
                       sector.pure ? "pure_sector_entropy" : "flagged_mixture");
        }
    }
    report_row(label, "oracle_weight_deviation", report.max_weight_deviation, "spin_projector_trace");
    bool mismatch = !report.block_diagonal || report.max_weight_deviation > 1e-9;
    if (report.all_recognized) {
        report_row(label, "oracle_entanglement", report.total_entanglement, "twirl_project_measure");
        report_row(label, "oracle_value_deviation", std::abs(report.total_entanglement - closed),
                   "twirl_project_measure");
        if (std::abs(report.total_entanglement - closed) > 1e-9) mismatch = true;
    }
    return mismatch ? kExitMismatch : kExitOk;
}

int run_covariance(const std::string& channel_path, const std::string& group_path, int probes) {
    const KrausChannel channel = load_kraus_channel(channel_path);
    const GroupAction action = load_group_action(group_path);
    const CovarianceReport report = is_covariant(channel, action, probes);
    std::cout << "quantity,value\n";
    std::cout << "covariant," << (report.covariant ? "true" : "false") << '\n';
    std::cout << "max_deviation," << format_real(report.max_deviation) << '\n';
    return report.covariant ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bipartite entanglement under superselection rules"};
    app.require_subcommand(1);

    std::string state_path;
    auto* entropy = app.add_subcommand("entropy", "Entanglement measures of a state file");
    entropy->add_option("state", state_path, "state file")->required();

    app.add_subcommand("table1", "Built-in fixture table of mode vs number-constrained entanglement");

    int max_c = 0;
    auto* scan = app.add_subcommand("copies-scan", "Split-particle entanglement per copy count");
    scan->add_option("--max-c", max_c, "largest copy count")->required()->check(CLI::Range(1, 64));

    long long n_molecules = 0;
    bool brute = false;
    auto* ensemble = app.add_subcommand("ensemble", "Twirled Bell-ensemble entanglement");
    ensemble->add_option("--n", n_molecules, "molecule count")->required()
        ->check(CLI::Range(1LL, 1LL << 40));
    ensemble->add_flag("--brute-force", brute, "cross-check against the dense oracle");

    std::string channel_path, group_path;
    int probes = 0;
    auto* covariance = app.add_subcommand("covariance", "Channel covariance verdict");
    covariance->add_option("--channel", channel_path, "Kraus operator file")->required();
    covariance->add_option("--group", group_path, "group action file")->required();
    covariance->add_option("--probes", probes, "probe count (0 = full spanning set)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (entropy->parsed()) return run_entropy(state_path);
        if (app.got_subcommand("table1")) return run_table1();
        if (scan->parsed()) return run_copies_scan(max_c);
        if (ensemble->parsed()) {
            if (brute && n_molecules > kMaxOracleMolecules) {
                std::cerr << "brute-force budget exceeded\n";
                return kExitInputError;
            }
            return run_ensemble(n_molecules, brute);
        }
        if (covariance->parsed()) return run_covariance(channel_path, group_path, probes);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
