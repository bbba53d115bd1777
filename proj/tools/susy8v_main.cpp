// Command line front end: runs named check suites over a parameter grid and
// prints the core objects (weights, K matrices, Hamiltonians, transfer
// matrices, singlet states) for inspection.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "susy8v/hamiltonian.hpp"
#include "susy8v/suites.hpp"
#include "susy8v/susy.hpp"
#include "susy8v/transfer.hpp"
#include "susy8v/vertex.hpp"

namespace {

using namespace susy8v;

constexpr int exit_usage = 2;

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void print_matrix(const Matrix& m) {
    const Eigen::IOFormat wide(12, 0, "  ", "\n", "", "", "", "");
    std::cout << m.format(wide) << "\n";
}

int run_command(const RunConfig& config) {
    const Report report = run_suites(config);
    const std::string body =
        config.format == "csv" ? to_csv(report) : to_json(config, report, utc_timestamp());
    if (config.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(config.out);
        if (!out) throw std::invalid_argument("out: cannot write '" + config.out + "'");
        out << body;
    }
    std::fprintf(stderr, "records: %d pass, %d fail, %d inconclusive\n",
                 report.count(Status::pass), report.count(Status::fail),
                 report.count(Status::inconclusive));
    return exit_code(report);
}

int print_command(const std::string& kind, double p, double u, double t, int L, double y_opt,
                  bool have_y, const std::vector<double>& mu, bool have_mu) {
    const Nome nome(p);
    const SpectralPoint sp(nome, u, t);
    const Complex y = have_y ? Complex(y_opt, 0.0) : Complex(y_of_t(nome, t), 0.0);

    if (kind == "weights") {
        const VertexWeights w = weights(sp);
        std::printf("a = %.17g\n", w.a);
        std::printf("b = %.17g\n", w.b);
        std::printf("c = %.17g\n", w.c);
        std::printf("d = %.17g\n", w.d);
        std::printf("combined residual = %.3e\n", w.combined_residual());
        return 0;
    }
    if (kind == "kmatrix") {
        KPair kp;
        if (have_mu) {
            if (mu.size() != 3) throw std::invalid_argument("mu: expected three components");
            kp = k_pair_general(sp, {mu[0], mu[1], mu[2]});
        } else {
            kp = k_pair_weights(weights(sp), y);
        }
        std::cout << "K- (u):\n";
        print_matrix(kp.k_minus);
        std::cout << "K+ (u + 2 eta):\n";
        print_matrix(kp.k_plus);
        return 0;
    }
    if (kind == "hamiltonian") {
        const ChainCouplings c = chain_couplings(sp);
        std::printf("couplings: J = (%.12g, %.12g, %.12g)  lambda = (%.12g, %.12g, %.12g)\n",
                    c.J[0], c.J[1], c.J[2], c.lambda[0], c.lambda[1], c.lambda[2]);
        print_matrix(xyz_hamiltonian(L, c));
        return 0;
    }
    if (kind == "transfer") {
        const TransferSpec spec(L, sp);
        print_matrix(transfer_dense(spec));
        return 0;
    }
    if (kind == "singlet") {
        const ThetaBasis basis = theta_basis(nome, pi / 6.0);
        const LocalSupercharge q = local_supercharge(basis.zeta, basis.y);
        const Matrix H = susy_hamiltonian(q, L);
        const SingletData data = singlet(q, L, H, basis);
        Vector psi = data.psi;
        int lead = 0;
        for (int i = 1; i < psi.size(); ++i)
            if (std::abs(psi(i)) > std::abs(psi(lead))) lead = i;
        psi *= std::abs(psi(lead)) / psi(lead);  // phase fix: leading amplitude real positive
        psi /= psi.norm();
        std::printf("mu_L = %.17g%+.17gi  energy = %.3e\n", data.mu_L.real(), data.mu_L.imag(),
                    data.energy);
        for (int i = 0; i < psi.size(); ++i)
            std::printf("%4d  %+.17g  %+.17g\n", i, psi(i).real(), psi(i).imag());
        return 0;
    }
    throw std::invalid_argument("kind: expected weights, kmatrix, hamiltonian, transfer or singlet");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"checks for the supersymmetric eight-vertex chain and its transfer matrix"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run named check suites over a parameter grid");
    std::vector<std::string> suites;
    std::vector<double> ps, us, ts;
    std::vector<int> Ls;
    std::vector<std::string> tols;
    std::string config_path, out_path, format;
    unsigned seed = 0;
    int threads = 0;
    run->add_option("--suite", suites, "suite names (or 'all')")->delimiter(',');
    run->add_option("--config", config_path, "flat key = value config file");
    run->add_option("--p", ps, "elliptic nome grid")->delimiter(',');
    run->add_option("--u", us, "spectral parameter grid")->delimiter(',');
    run->add_option("--t", ts, "twist parameter grid")->delimiter(',');
    run->add_option("--L", Ls, "chain length grid")->delimiter(',');
    run->add_option("--seed", seed, "seed for randomized draws");
    run->add_option("--out", out_path, "write the report to this path");
    run->add_option("--format", format, "json or csv");
    run->add_option("--threads", threads, "worker pool size");
    run->add_option("--tol", tols, "per-check tolerance overrides, name=value")->delimiter(',');

    auto* print = app.add_subcommand("print", "print one object for inspection");
    std::string kind;
    double p = 0.3, u = 0.2, t = susy8v::pi / 6.0, y_opt = 0.0;
    int L = 3;
    std::vector<double> mu;
    print->add_option("kind", kind, "weights | kmatrix | hamiltonian | transfer | singlet")
        ->required();
    print->add_option("--p", p, "elliptic nome");
    print->add_option("--u", u, "spectral parameter");
    print->add_option("--t", t, "twist parameter");
    print->add_option("--L", L, "chain length");
    auto* y_flag = print->add_option("--y", y_opt, "boundary direction parameter");
    auto* mu_flag = print->add_option("--mu", mu, "general boundary direction, three components")
                        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (run->parsed()) {
            RunConfig config;
            if (!config_path.empty()) config = load_config_file(config_path);
            if (run->count("--suite")) config.suites = suites;
            if (run->count("--p")) config.p = ps;
            if (run->count("--u")) config.u = us;
            if (run->count("--t")) config.t = ts;
            if (run->count("--L")) config.L = Ls;
            if (run->count("--seed")) config.seed = seed;
            if (run->count("--out")) config.out = out_path;
            if (run->count("--format")) config.format = format;
            if (run->count("--threads")) config.threads = threads;
            for (const auto& item : tols) {
                const size_t eq = item.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("tol: expected name=value, got '" + item + "'");
                config.tolerances[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
            }
            validate_config(config);
            return run_command(config);
        }
        return print_command(kind, p, u, t, L, y_opt, y_flag->count() > 0, mu,
                             mu_flag->count() > 0);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
}
