// crcep: covariance extension and periodic smoothing from the command line.
//
// Subcommands: extend-line, extend-periodic, extend-vector, smooth, simulate.
// Inputs are JSON documents; outputs are JSON (models/reports) or CSV
// (trajectories).  Exit codes: 0 ok, 1 usage, 2 bad data, 3 infeasible,
// 4 non-convergence.  Set CRCEP_LOG=info|debug for progress on stderr.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crcep/io.hpp"

namespace {

using namespace crcep;
using nlohmann::json;

int log_level() {
    const char* lvl = std::getenv("CRCEP_LOG");
    if (!lvl) return 0;
    if (std::strcmp(lvl, "debug") == 0) return 2;
    if (std::strcmp(lvl, "info") == 0) return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::fprintf(stderr, "[crcep] %s\n", msg.c_str());
}

struct JobSpec {
    std::string command;
    std::string cov_path, b_path, state_path, model_path, channel_path;
    std::string output;
    std::string model_output;  // smooth: optionally keep the fitted model
    int N = 0;
    int n = 1;
    std::uint64_t seed = 0;
    SolverConfig config;
};

void write_error(const std::string& path, const std::string& type,
                 const std::string& message) {
    if (path.empty()) return;
    try {
        write_json_file(path,
                        {{"error", {{"type", type}, {"message", message}}}});
    } catch (...) {
        // the error document is best-effort
    }
}

int run_extend_line(const JobSpec& job) {
    const CovarianceInput cov = parse_covariance(load_json_file(job.cov_path));
    const Vec c = cov.scalar_lags();
    const Vec b = parse_polynomial(load_json_file(job.b_path));
    auto [model, report] = solve_line(c, b, job.config);
    write_json_file(job.output, {{"model", model_to_json(model)},
                                 {"report", report_to_json(report)}});
    return 0;
}

int run_extend_periodic(const JobSpec& job) {
    const CovarianceInput cov = parse_covariance(load_json_file(job.cov_path));
    const Vec c = cov.scalar_lags();
    const Vec b = parse_polynomial(load_json_file(job.b_path));
    if (cov.n >= job.N) throw DataError("n < N required");
    auto [model, report] = solve(c, b, job.N, job.config);
    write_json_file(job.output, {{"model", model_to_json(model)},
                                 {"report", report_to_json(report)}});
    return 0;
}

int run_extend_vector(const JobSpec& job) {
    const CovarianceInput cov = parse_covariance(load_json_file(job.cov_path));
    const Vec b = parse_polynomial(load_json_file(job.b_path));
    if (cov.n >= job.N) throw DataError("n < N required");
    auto [model, report] = solve_vec(cov.lags, b, job.N, job.config);
    write_json_file(job.output, {{"model", model_to_json(model)},
                                 {"report", report_to_json(report)}});
    return 0;
}

int run_smooth(const JobSpec& job) {
    const StateSpaceModel ss = parse_state_model(load_json_file(job.state_path));
    const Vec b = parse_polynomial(load_json_file(job.b_path));
    if (job.n >= job.N) throw DataError("n < N required");

    log_info("fitting the periodic model to the stationary covariances");
    const std::vector<Mat> C = lyapunov_lags(ss, job.n);
    auto [prior, report] = solve_vec(C, b, job.N, job.config);

    log_info("simulating and smoothing (seed " + std::to_string(job.seed) +
             ")");
    const ObservationChannel channel{ss.C, ss.R};
    auto [x, y] = simulate_trajectory(prior, channel, job.seed);
    const SmoothingResult res = smooth({prior, channel, y});

    const int twoN = 2 * job.N;
    const int m = prior.m;
    const int p = static_cast<int>(ss.C.rows());
    Mat table(twoN, 1 + p + 2 * m);
    std::vector<std::string> header{"t"};
    for (int i = 0; i < p; ++i) header.push_back("y" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i) {
        header.push_back("x" + std::to_string(i + 1));
        header.push_back("xhat" + std::to_string(i + 1));
    }
    for (int row = 0; row < twoN; ++row) {
        int col = 0;
        table(row, col++) = row - (job.N - 1);
        for (int i = 0; i < p; ++i) table(row, col++) = y(row, i);
        for (int i = 0; i < m; ++i) {
            table(row, col++) = x(row, i);
            table(row, col++) = res.xhat(row, i);
        }
    }
    write_csv(job.output, header, table);
    if (!job.model_output.empty())
        write_json_file(job.model_output,
                        {{"model", model_to_json(prior)},
                         {"report", report_to_json(report)},
                         {"seed", job.seed},
                         {"posterior_residual", res.posterior_residual}});
    return 0;
}

int run_simulate(const JobSpec& job) {
    const VectorPeriodicArmaModel model =
        parse_vector_model(load_json_file(job.model_path));
    ObservationChannel channel{Mat::Identity(model.m, model.m),
                               Mat::Identity(model.m, model.m)};
    if (!job.channel_path.empty())
        channel = parse_channel(load_json_file(job.channel_path));
    auto [x, y] = simulate_trajectory(model, channel, job.seed);

    const int twoN = 2 * model.N;
    const int p = static_cast<int>(channel.C.rows());
    Mat table(twoN, 1 + model.m + p);
    std::vector<std::string> header{"t"};
    for (int i = 0; i < model.m; ++i)
        header.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < p; ++i) header.push_back("y" + std::to_string(i + 1));
    for (int row = 0; row < twoN; ++row) {
        int col = 0;
        table(row, col++) = row - (model.N - 1);
        for (int i = 0; i < model.m; ++i) table(row, col++) = x(row, i);
        for (int i = 0; i < p; ++i) table(row, col++) = y(row, i);
    }
    write_csv(job.output, header, table);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circulant rational covariance extension and smoothing"};
    app.require_subcommand(1);

    JobSpec job;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--delta", job.config.delta,
                        "convergence threshold on the iterate step");
        cmd->add_option("--max-iter", job.config.max_iterations,
                        "iteration budget");
    };

    CLI::App* line = app.add_subcommand("extend-line",
                                        "solve the integer-line problem");
    line->add_option("--cov", job.cov_path, "covariance JSON")->required();
    line->add_option("--b", job.b_path, "numerator polynomial JSON")
        ->required();
    line->add_option("-o,--output", job.output, "output JSON")->required();
    add_config(line);

    CLI::App* per = app.add_subcommand("extend-periodic",
                                       "solve the scalar periodic problem");
    per->add_option("--cov", job.cov_path, "covariance JSON")->required();
    per->add_option("--b", job.b_path, "numerator polynomial JSON")
        ->required();
    per->add_option("--N", job.N, "half-period")->required();
    per->add_option("-o,--output", job.output, "output JSON")->required();
    add_config(per);

    CLI::App* vec = app.add_subcommand("extend-vector",
                                       "solve the vector periodic problem");
    vec->add_option("--cov", job.cov_path, "block covariance JSON")
        ->required();
    vec->add_option("--b", job.b_path, "numerator polynomial JSON")
        ->required();
    vec->add_option("--N", job.N, "half-period")->required();
    vec->add_option("-o,--output", job.output, "output JSON")->required();
    add_config(vec);

    CLI::App* smo = app.add_subcommand(
        "smooth", "fit, simulate, and smooth a state-space instance");
    smo->add_option("--state", job.state_path, "state model JSON")
        ->required();
    smo->add_option("--b", job.b_path, "numerator polynomial JSON")
        ->required();
    smo->add_option("--N", job.N, "half-period")->required();
    smo->add_option("--n", job.n, "model bandwidth (default 1)");
    smo->add_option("--seed", job.seed, "simulation seed");
    smo->add_option("-o,--output", job.output, "output trajectory CSV")
        ->required();
    smo->add_option("--model-out", job.model_output,
                    "also write the fitted model JSON here");
    add_config(smo);

    CLI::App* sim = app.add_subcommand("simulate",
                                       "draw a trajectory from a model");
    sim->add_option("--model", job.model_path, "vector model JSON")
        ->required();
    sim->add_option("--channel", job.channel_path,
                    "observation channel JSON (default identity)");
    sim->add_option("--seed", job.seed, "simulation seed");
    sim->add_option("-o,--output", job.output, "output trajectory CSV")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // usage problems exit 1
    }

    try {
        if (line->parsed()) return run_extend_line(job);
        if (per->parsed()) return run_extend_periodic(job);
        if (vec->parsed()) return run_extend_vector(job);
        if (smo->parsed()) return run_smooth(job);
        if (sim->parsed()) return run_simulate(job);
        return 1;
    } catch (const InfeasibleAtNError& e) {
        write_error(job.output, "infeasible", e.what());
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const FactorizationError& e) {
        write_error(job.output, "infeasible", e.what());
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const ConvergenceError& e) {
        write_error(job.output, "non-convergence", e.what());
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return 4;
    } catch (const Error& e) {
        write_error(job.output, "data", e.what());
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        write_error(job.output, "data", e.what());
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
