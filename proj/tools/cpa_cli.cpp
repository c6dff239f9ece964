// Experiment harness for the avoidance contact process: parameter sweeps,
// replica farms, scaling fits, and deterministic CSV outputs.

#include "cpa/block_percolation.hpp"
#include "cpa/csv.hpp"
#include "cpa/exact_oracle.hpp"
#include "cpa/gillespie.hpp"
#include "cpa/oriented_percolation.hpp"
#include "cpa/parallel.hpp"
#include "cpa/spectral.hpp"
#include "cpa/star_chains.hpp"
#include "cpa/stats.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitCheckFailed = 4;

// Accepts "1,2,3" and "a:b:step" range syntax (inclusive endpoints).
std::vector<double> parse_double_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) {
            out.push_back(std::stod(item));
            continue;
        }
        auto colon2 = item.find(':', colon + 1);
        if (colon2 == std::string::npos)
            throw std::invalid_argument("range syntax is start:stop:step");
        double start = std::stod(item.substr(0, colon));
        double stop = std::stod(item.substr(colon + 1, colon2 - colon - 1));
        double step = std::stod(item.substr(colon2 + 1));
        if (step <= 0.0)
            throw std::invalid_argument("range step must be positive");
        for (double v = start; v <= stop + 1e-9 * step; v += step)
            out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    for (double v : parse_double_list(text))
        out.push_back(static_cast<int>(std::llround(v)));
    return out;
}

std::string join_effective(const std::map<std::string, std::string>& kv)
{
    std::string s;
    for (const auto& [k, v] : kv)
        s += k + "=" + v + ";";
    return s;
}

void write_header(cpa::CsvWriter& csv, const std::string& command, const std::map<std::string, std::string>& kv)
{
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(cpa::fnv1a_hash(command + ":" + join_effective(kv))));
    csv.comment("config-hash=" + std::string(hash));
    csv.comment("command=" + command);
    for (const auto& [k, v] : kv)
        csv.comment(k + "=" + v);
}

struct CommonOpts {
    std::string topology = "cycle";
    std::string n_list = "500";
    std::string lambda_list = "1.0";
    std::string alpha_list = "0.0";
    std::uint64_t replicas = 30;
    double tmax = -1.0; // command-specific default
    std::uint64_t seed = 1;
    std::string out;
    unsigned threads = cpa::default_thread_count();
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--topology", o.topology, "graph family: cycle|star|path")
        ->check(CLI::IsMember({"cycle", "star", "path"}));
    cmd->add_option("--n", o.n_list, "size or size list (path: window half-width W)");
    cmd->add_option("--lambda", o.lambda_list, "infection rate or list (a:b:step ranges allowed)");
    cmd->add_option("--alpha", o.alpha_list, "avoidance rate or list");
    cmd->add_option("--replicas", o.replicas, "replicas per cell");
    cmd->add_option("--tmax", o.tmax, "censoring horizon");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output CSV path");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_flag("--timings", o.timings, "append wall_ms to per-replica records");
}

cpa::Topology build_named_topology(const std::string& kind, int n)
{
    if (kind == "cycle")
        return cpa::Topology::cycle(n);
    if (kind == "star")
        return cpa::Topology::star(n);
    if (kind == "path")
        return cpa::Topology::path_window(n);
    throw std::invalid_argument("unknown topology: " + kind);
}

struct CellResult {
    std::vector<cpa::SurvivalRecord> records;
    std::vector<double> wall_ms;
};

CellResult run_cell(const cpa::Topology& topo, const cpa::Params& params, const cpa::StopCondition& stop,
                    std::uint64_t seed, std::uint64_t stream_base, std::uint64_t replicas, unsigned threads)
{
    CellResult cell;
    cell.records.resize(replicas);
    cell.wall_ms.assign(replicas, 0.0);
    cpa::parallel_replicas(replicas, threads, [&](std::uint64_t r) {
        auto t0 = std::chrono::steady_clock::now();
        cpa::RngStream rng(seed, stream_base + r);
        cpa::Configuration cfg0 = cpa::Configuration::all_infected(topo);
        cell.records[r] = cpa::run_to_absorption(cfg0, topo, params, stop, rng);
        cell.records[r].master_seed = seed;
        cell.records[r].replica_index = stream_base + r;
        cell.wall_ms[r] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });
    return cell;
}

void write_records(cpa::CsvWriter& csv, const std::string& topology_name, int n, const cpa::Params& p,
                   double tmax, const CellResult& cell, bool timings)
{
    for (std::size_t r = 0; r < cell.records.size(); ++r) {
        const auto& rec = cell.records[r];
        std::vector<std::string> row{
            cpa::CsvWriter::cell(rec.master_seed),
            cpa::CsvWriter::cell(rec.replica_index),
            topology_name,
            cpa::CsvWriter::cell(n),
            cpa::CsvWriter::cell(p.lambda),
            cpa::CsvWriter::cell(p.alpha),
            cpa::CsvWriter::cell(tmax),
            cpa::outcome_name(rec.outcome),
            rec.extinction_time ? cpa::CsvWriter::cell(*rec.extinction_time) : std::string{},
            cpa::CsvWriter::cell(rec.event_count),
        };
        if (timings)
            row.push_back(cpa::CsvWriter::cell(cell.wall_ms[r]));
        csv.row(row);
    }
}

const std::vector<std::string> kRecordHeader = {"master_seed", "replica_index", "topology", "n",
                                                "lambda",      "alpha",         "t_max",    "outcome",
                                                "extinction_time", "event_count"};

// ---------------------------------------------------------------- heatmap

int cmd_heatmap(const CommonOpts& o, int reduced_n, double reduced_alpha_threshold,
                const std::string& records_path)
{
    if (o.topology != "cycle")
        throw std::invalid_argument("heatmap requires --topology cycle");
    auto lambdas = parse_double_list(o.lambda_list);
    auto alphas = parse_double_list(o.alpha_list);
    auto ns = parse_int_list(o.n_list);
    if (ns.size() != 1)
        throw std::invalid_argument("heatmap takes a single --n");
    const int n_full = ns[0];
    if (o.replicas < 1)
        throw std::invalid_argument("replicas must be >= 1");

    std::map<std::string, std::string> kv{
        {"topology", "cycle"},
        {"n", std::to_string(n_full)},
        {"lambda", o.lambda_list},
        {"alpha", o.alpha_list},
        {"replicas", std::to_string(o.replicas)},
        {"tmax", o.tmax > 0 ? cpa::format_double(o.tmax) : "20n"},
        {"seed", std::to_string(o.seed)},
        {"reduced_n", std::to_string(reduced_n)},
        {"reduced_alpha_threshold", cpa::format_double(reduced_alpha_threshold)},
    };

    cpa::CsvWriter csv(o.out.empty() ? "heatmap.csv" : o.out);
    write_header(csv, "heatmap", kv);
    if (reduced_n > 0)
        csv.comment("cells with alpha >= " + cpa::format_double(reduced_alpha_threshold) + " use n=" +
                    std::to_string(reduced_n));
    csv.row({"lambda", "alpha", "n", "tmax", "replicas", "survivors", "survival_fraction"});

    std::unique_ptr<cpa::CsvWriter> records;
    if (!records_path.empty()) {
        records = std::make_unique<cpa::CsvWriter>(records_path);
        write_header(*records, "heatmap-records", kv);
        auto header = kRecordHeader;
        if (o.timings)
            header.push_back("wall_ms");
        records->row(header);
    }

    std::uint64_t cell_index = 0;
    for (double alpha : alphas) {
        for (double lambda : lambdas) {
            const int n = (reduced_n > 0 && alpha >= reduced_alpha_threshold) ? reduced_n : n_full;
            const double tmax = o.tmax > 0 ? o.tmax : 20.0 * n;
            cpa::Topology topo = cpa::Topology::cycle(n);
            cpa::Params p{lambda, alpha};
            cpa::StopCondition stop;
            stop.t_max = tmax;
            CellResult cell = run_cell(topo, p, stop, o.seed, cell_index * o.replicas, o.replicas, o.threads);
            ++cell_index;

            std::uint64_t survivors = 0;
            for (const auto& rec : cell.records)
                survivors += rec.outcome == cpa::Outcome::AliveAtCutoff ? 1 : 0;
            csv.row({cpa::CsvWriter::cell(lambda), cpa::CsvWriter::cell(alpha), cpa::CsvWriter::cell(n),
                     cpa::CsvWriter::cell(tmax), cpa::CsvWriter::cell(o.replicas),
                     cpa::CsvWriter::cell(survivors),
                     cpa::CsvWriter::cell(static_cast<double>(survivors) / static_cast<double>(o.replicas))});
            if (records)
                write_records(*records, "cycle" + std::to_string(n), n, p, tmax, cell, o.timings);
        }
    }
    csv.close();
    if (records)
        records->close();
    return 0;
}

// ------------------------------------------------------------- zn-scaling

int cmd_zn_scaling(const CommonOpts& o, const std::string& records_path)
{
    if (o.topology != "cycle")
        throw std::invalid_argument("zn-scaling requires --topology cycle");
    auto lambdas = parse_double_list(o.lambda_list);
    auto alphas = parse_double_list(o.alpha_list);
    if (lambdas.size() != 1 || alphas.size() != 1)
        throw std::invalid_argument("zn-scaling takes a single lambda and alpha");
    auto ns = parse_int_list(o.n_list);
    cpa::Params p{lambdas[0], alphas[0]};
    const double tmax = o.tmax > 0 ? o.tmax : 1e4;

    std::map<std::string, std::string> kv{
        {"topology", "cycle"},        {"n", o.n_list},
        {"lambda", cpa::format_double(p.lambda)}, {"alpha", cpa::format_double(p.alpha)},
        {"replicas", std::to_string(o.replicas)}, {"tmax", cpa::format_double(tmax)},
        {"seed", std::to_string(o.seed)},
    };

    cpa::CsvWriter csv(o.out.empty() ? "zn_scaling.csv" : o.out);
    write_header(csv, "zn-scaling", kv);
    csv.row({"n", "replicas", "extinct", "censored", "median_tau", "q90_tau"});

    std::unique_ptr<cpa::CsvWriter> records;
    if (!records_path.empty()) {
        records = std::make_unique<cpa::CsvWriter>(records_path);
        write_header(*records, "zn-scaling-records", kv);
        auto header = kRecordHeader;
        if (o.timings)
            header.push_back("wall_ms");
        records->row(header);
    }

    std::vector<double> log_n, medians, n_values;
    std::uint64_t cell_index = 0;
    for (int n : ns) {
        cpa::Topology topo = cpa::Topology::cycle(n);
        cpa::StopCondition stop;
        stop.t_max = tmax;
        CellResult cell = run_cell(topo, p, stop, o.seed, cell_index * o.replicas, o.replicas, o.threads);
        ++cell_index;

        std::vector<double> taus;
        std::uint64_t censored = 0;
        for (const auto& rec : cell.records) {
            taus.push_back(rec.observed_time()); // censored replicas enter at t_max
            censored += rec.outcome != cpa::Outcome::Extinct ? 1 : 0;
        }
        const double med = cpa::stats::median(taus);
        const double q90 = cpa::stats::quantile(taus, 0.9);
        csv.row({cpa::CsvWriter::cell(n), cpa::CsvWriter::cell(o.replicas),
                 cpa::CsvWriter::cell(o.replicas - censored), cpa::CsvWriter::cell(censored),
                 cpa::CsvWriter::cell(med), cpa::CsvWriter::cell(q90)});
        if (records)
            write_records(*records, topo.describe(), n, p, tmax, cell, o.timings);

        log_n.push_back(std::log(static_cast<double>(n)));
        n_values.push_back(static_cast<double>(n));
        medians.push_back(med);
    }

    if (ns.size() >= 2) {
        auto sub = cpa::stats::linear_fit(log_n, medians); // tau ~ C log n
        std::vector<double> log_med;
        for (double m : medians)
            log_med.push_back(std::log(std::max(m, 1e-300)));
        auto super = cpa::stats::linear_fit(n_values, log_med); // log tau ~ c n
        csv.comment("fit-subcritical: median_tau ~ slope*log(n); slope=" + cpa::format_double(sub.slope) +
                    " intercept=" + cpa::format_double(sub.intercept) + " r2=" + cpa::format_double(sub.r_squared));
        csv.comment("fit-supercritical: log(median_tau) ~ slope*n; slope=" + cpa::format_double(super.slope) +
                    " intercept=" + cpa::format_double(super.intercept) +
                    " r2=" + cpa::format_double(super.r_squared));
        std::printf("zn-scaling: subcritical R2=%.4f  supercritical R2=%.4f\n", sub.r_squared,
                    super.r_squared);
    }
    csv.close();
    if (records)
        records->close();
    return 0;
}

// -------------------------------------------------------------- star-delta

int cmd_star_delta(const CommonOpts& o, const std::string& engine, std::uint64_t max_phases)
{
    auto lambdas = parse_double_list(o.lambda_list);
    auto alphas = parse_double_list(o.alpha_list);
    if (lambdas.size() != 1 || alphas.size() != 1)
        throw std::invalid_argument("star-delta takes a single lambda and alpha");
    cpa::Params p{lambdas[0], alphas[0]};
    if (!(p.lambda > 0.0))
        throw std::invalid_argument("star-delta requires lambda > 0");
    auto ns = parse_int_list(o.n_list);

    std::map<std::string, std::string> kv{
        {"topology", "star"},
        {"n", o.n_list},
        {"lambda", cpa::format_double(p.lambda)},
        {"alpha", cpa::format_double(p.alpha)},
        {"replicas", std::to_string(o.replicas)},
        {"seed", std::to_string(o.seed)},
        {"engine", engine},
    };

    cpa::CsvWriter csv(o.out.empty() ? "star_delta.csv" : o.out);
    write_header(csv, "star-delta", kv);
    csv.comment(engine == "zchain" || engine == "klchain"
                    ? "tau unit: one-phases (n = leaf count)"
                    : "tau unit: continuous time (n = vertex count)");

    if (p.alpha == 0.0) {
        csv.comment("regime=exponential (alpha=0: classical contact process, Delta is infinite)");
        csv.comment("polynomial fit refused");
        csv.close();
        std::printf("star-delta: alpha=0 gives the exponential regime; no polynomial exponent exists\n");
        return 0;
    }

    const double delta_closed = cpa::star::delta_exponent(p);
    csv.comment("closed-form Delta=" + cpa::format_double(delta_closed));
    csv.row({"n", "replicas", "median_tau", "q90_tau"});

    std::vector<double> log_n, log_med;
    std::uint64_t cell_index = 0;
    for (int n : ns) {
        std::vector<double> taus(o.replicas, 0.0);
        const std::uint64_t base = cell_index * o.replicas;
        ++cell_index;

        if (engine == "zchain") {
            cpa::star::ZChain chain(n, p);
            cpa::parallel_replicas(o.replicas, o.threads, [&](std::uint64_t r) {
                cpa::RngStream rng(o.seed, base + r);
                taus[r] = static_cast<double>(chain.run(rng, max_phases));
            });
        } else if (engine == "klchain") {
            cpa::star::KLChain chain(n, p);
            cpa::parallel_replicas(o.replicas, o.threads, [&](std::uint64_t r) {
                cpa::RngStream rng(o.seed, base + r);
                taus[r] = static_cast<double>(chain.run(rng, max_phases));
            });
        } else if (engine == "reduced") {
            const double tmax = o.tmax > 0 ? o.tmax : std::numeric_limits<double>::infinity();
            cpa::parallel_replicas(o.replicas, o.threads, [&](std::uint64_t r) {
                cpa::RngStream rng(o.seed, base + r);
                auto res = cpa::star::reduced_star_run(n, p, rng, tmax);
                taus[r] = res.record.observed_time();
            });
        } else if (engine == "full") {
            const double tmax = o.tmax > 0 ? o.tmax : std::numeric_limits<double>::infinity();
            cpa::Topology topo = cpa::Topology::star(n);
            cpa::StopCondition stop;
            stop.t_max = tmax;
            cpa::parallel_replicas(o.replicas, o.threads, [&](std::uint64_t r) {
                cpa::RngStream rng(o.seed, base + r);
                auto rec =
                    cpa::run_to_absorption(cpa::Configuration::all_infected(topo), topo, p, stop, rng);
                taus[r] = rec.observed_time();
            });
        } else {
            throw std::invalid_argument("unknown engine: " + engine);
        }

        std::vector<double> tcopy = taus;
        const double med = cpa::stats::median(tcopy);
        const double q90 = cpa::stats::quantile(taus, 0.9);
        csv.row({cpa::CsvWriter::cell(n), cpa::CsvWriter::cell(o.replicas), cpa::CsvWriter::cell(med),
                 cpa::CsvWriter::cell(q90)});
        std::printf("star-delta: n=%d median_tau=%.6g\n", n, med);

        log_n.push_back(std::log(static_cast<double>(n)));
        log_med.push_back(std::log(std::max(med, 1e-300)));
    }

    if (ns.size() >= 2) {
        auto fit = cpa::stats::linear_fit(log_n, log_med);
        const double ci = 1.96 * fit.slope_stderr;
        csv.comment("fitted Delta_hat=" + cpa::format_double(fit.slope) + " ci95=" + cpa::format_double(ci) +
                    " r2=" + cpa::format_double(fit.r_squared));
        std::printf("star-delta: Delta_hat=%.4f +- %.4f (closed form %.4f)\n", fit.slope, ci, delta_closed);
    }
    csv.close();
    return 0;
}

// ------------------------------------------------------------ oracle-check

int cmd_oracle_check(const CommonOpts& o, const std::string& graph, const std::string& start)
{
    auto lambdas = parse_double_list(o.lambda_list);
    auto alphas = parse_double_list(o.alpha_list);

    cpa::Topology topo = [&]() {
        if (graph == "single")
            return cpa::Topology::custom(1, {});
        if (graph == "path2")
            return cpa::Topology::custom(2, {{0, 1}, {1, 0}});
        if (graph == "path3")
            return cpa::Topology::custom(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
        if (graph == "path4")
            return cpa::block::block_topology();
        if (graph == "cycle3")
            return cpa::Topology::cycle(3);
        if (graph == "cycle4")
            return cpa::Topology::cycle(4);
        if (graph == "star4")
            return cpa::Topology::star(4);
        throw std::invalid_argument("unknown graph: " + graph);
    }();
    if (topo.vertex_count() > 4)
        throw std::invalid_argument("oracle-check supports at most 4 vertices");

    cpa::Configuration cfg0 = start == "all" ? cpa::Configuration::all_infected(topo)
                                             : cpa::Configuration::single_infected(topo, 0);

    std::map<std::string, std::string> kv{
        {"graph", graph},
        {"start", start},
        {"lambda", o.lambda_list},
        {"alpha", o.alpha_list},
        {"replicas", std::to_string(o.replicas)},
        {"seed", std::to_string(o.seed)},
    };
    std::unique_ptr<cpa::CsvWriter> csv;
    if (!o.out.empty()) {
        csv = std::make_unique<cpa::CsvWriter>(o.out);
        write_header(*csv, "oracle-check", kv);
        csv->row({"lambda", "alpha", "exact_mean", "mc_mean", "mc_se", "pass"});
    }

    int failures = 0;
    std::uint64_t cell_index = 0;
    for (double lambda : lambdas) {
        for (double alpha : alphas) {
            cpa::Params p{lambda, alpha};
            auto space = cpa::oracle::enumerate_state_space(topo, cfg0, p);
            const double exact =
                cpa::oracle::mean_absorption_time(space, cpa::oracle::build_generator(space, topo, p));

            std::vector<double> times(o.replicas);
            const std::uint64_t base = cell_index * o.replicas;
            ++cell_index;
            cpa::parallel_replicas(o.replicas, o.threads, [&](std::uint64_t r) {
                cpa::RngStream rng(o.seed, base + r);
                times[r] = *cpa::run_to_absorption(cfg0, topo, p, {}, rng).extinction_time;
            });
            auto m = cpa::stats::moments(times);
            const bool pass = std::fabs(m.mean - exact) <= 3.0 * m.standard_error + 1e-12;
            failures += pass ? 0 : 1;
            std::printf("%-5s lambda=%-6g alpha=%-6g exact=%.6f mc=%.6f se=%.6f  %s\n", graph.c_str(),
                        lambda, alpha, exact, m.mean, m.standard_error, pass ? "PASS" : "FAIL");
            if (csv)
                csv->row({cpa::CsvWriter::cell(lambda), cpa::CsvWriter::cell(alpha),
                          cpa::CsvWriter::cell(exact), cpa::CsvWriter::cell(m.mean),
                          cpa::CsvWriter::cell(m.standard_error), pass ? "1" : "0"});
        }
    }
    if (csv)
        csv->close();
    return failures == 0 ? 0 : kExitCheckFailed;
}

// ------------------------------------------------------------------ block

int cmd_block(const CommonOpts& o, const std::string& start, double tau, const std::string& boundary)
{
    auto lambdas = parse_double_list(o.lambda_list);
    auto alphas = parse_double_list(o.alpha_list);
    if (lambdas.size() != 1 || alphas.size() != 1)
        throw std::invalid_argument("block takes a single lambda and alpha");
    cpa::Params p{lambdas[0], alphas[0]};

    std::vector<cpa::block::BlockClassKind> starts;
    if (start == "all")
        starts = {cpa::block::BlockClassKind::A2O, cpa::block::BlockClassKind::A2L,
                  cpa::block::BlockClassKind::A2R};
    else if (start == "A2O")
        starts = {cpa::block::BlockClassKind::A2O};
    else if (start == "A2L")
        starts = {cpa::block::BlockClassKind::A2L};
    else if (start == "A2R")
        starts = {cpa::block::BlockClassKind::A2R};
    else
        throw std::invalid_argument("start must be A2O|A2L|A2R|all");

    std::vector<cpa::block::BoundaryMode> modes;
    if (boundary == "both")
        modes = {cpa::block::BoundaryMode::Closed, cpa::block::BoundaryMode::Hostile};
    else if (boundary == "closed")
        modes = {cpa::block::BoundaryMode::Closed};
    else if (boundary == "hostile")
        modes = {cpa::block::BoundaryMode::Hostile};
    else
        throw std::invalid_argument("boundary must be closed|hostile|both");

    std::map<std::string, std::string> kv{
        {"lambda", cpa::format_double(p.lambda)}, {"alpha", cpa::format_double(p.alpha)},
        {"tau", cpa::format_double(tau)},         {"start", start},
        {"boundary", boundary},                   {"replicas", std::to_string(o.replicas)},
        {"seed", std::to_string(o.seed)},
    };
    std::unique_ptr<cpa::CsvWriter> csv;
    if (!o.out.empty()) {
        csv = std::make_unique<cpa::CsvWriter>(o.out);
        write_header(*csv, "block", kv);
        csv->row({"start", "boundary", "tau", "replicas", "good_probability", "se"});
    }

    std::uint64_t stream = 0;
    for (auto sc : starts) {
        for (auto mode : modes) {
            cpa::RngStream rng(o.seed, stream++);
            auto est = cpa::block::block_good_probability(p, tau, sc, o.replicas, mode, rng);
            const char* mode_name = mode == cpa::block::BoundaryMode::Closed ? "closed" : "hostile";
            std::printf("block %-3s %-7s tau=%g good=%.4f se=%.4f\n", cpa::block::block_class_name(sc),
                        mode_name, tau, est.probability, est.standard_error);
            if (csv)
                csv->row({cpa::block::block_class_name(sc), mode_name, cpa::CsvWriter::cell(tau),
                          cpa::CsvWriter::cell(o.replicas), cpa::CsvWriter::cell(est.probability),
                          cpa::CsvWriter::cell(est.standard_error)});
        }
    }
    if (csv)
        csv->close();
    return 0;
}

// ------------------------------------------------------------- percolation

int cmd_percolation(const CommonOpts& o, const std::string& p_list, int width, int height, bool speed,
                    int speed_height)
{
    auto ps = parse_double_list(p_list);

    std::map<std::string, std::string> kv{
        {"p", p_list},
        {"width", std::to_string(width)},
        {"height", std::to_string(height)},
        {"replicas", std::to_string(o.replicas)},
        {"seed", std::to_string(o.seed)},
    };
    std::unique_ptr<cpa::CsvWriter> csv;
    if (!o.out.empty()) {
        csv = std::make_unique<cpa::CsvWriter>(o.out);
        write_header(*csv, "percolation", kv);
        csv->row({"p", "width", "height", "replicas", "survived", "survival_fraction", "edge_speed",
                  "speed_survivors"});
    }

    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        const double p = ps[pi];
        std::vector<int> survived(o.replicas, 0);
        cpa::parallel_replicas(o.replicas, o.threads, [&](std::uint64_t r) {
            cpa::RngStream rng(o.seed, pi * o.replicas + r);
            auto run = cpa::block::op_run({p, width, height}, rng);
            survived[r] = run.survived_to(height) ? 1 : 0;
        });
        std::uint64_t total = 0;
        for (int s : survived)
            total += s;

        std::string speed_cell, speed_n_cell;
        if (speed) {
            cpa::RngStream rng(o.seed, 1000000 + pi);
            try {
                auto est = cpa::block::op_edge_speed(p, speed_height, o.replicas, rng);
                speed_cell = cpa::format_double(est.speed);
                speed_n_cell = std::to_string(est.surviving);
            } catch (const cpa::block::NoEstimateError&) {
                speed_cell = "";
                speed_n_cell = "0";
            }
        }
        std::printf("percolation p=%.3f survival=%llu/%llu%s%s\n", p,
                    static_cast<unsigned long long>(total), static_cast<unsigned long long>(o.replicas),
                    speed ? " speed=" : "", speed ? (speed_cell.empty() ? "none" : speed_cell.c_str()) : "");
        if (csv)
            csv->row({cpa::CsvWriter::cell(p), cpa::CsvWriter::cell(width), cpa::CsvWriter::cell(height),
                      cpa::CsvWriter::cell(o.replicas), cpa::CsvWriter::cell(total),
                      cpa::CsvWriter::cell(static_cast<double>(total) / static_cast<double>(o.replicas)),
                      speed_cell, speed_n_cell});
    }
    if (csv)
        csv->close();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"avoidance contact process experiment harness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags override");

    CommonOpts heat_o, zn_o, star_o, oracle_o, block_o, perc_o;

    auto* heat = app.add_subcommand("heatmap", "survival fraction over a (lambda, alpha) grid on the cycle");
    add_common(heat, heat_o);
    int reduced_n = 0;
    double reduced_alpha_threshold = 50.0;
    std::string heat_records;
    heat->add_option("--reduced-n", reduced_n, "smaller n for cells with alpha >= threshold (0 = off)");
    heat->add_option("--reduced-alpha-threshold", reduced_alpha_threshold, "alpha threshold for --reduced-n");
    heat->add_option("--records", heat_records, "also write per-replica records CSV");

    auto* zn = app.add_subcommand("zn-scaling", "extinction-time scaling on the cycle");
    add_common(zn, zn_o);
    zn_o.n_list = "100,200,400,800,1600,3200";
    zn_o.replicas = 200;
    std::string zn_records;
    zn->add_option("--records", zn_records, "also write per-replica records CSV");

    auto* star = app.add_subcommand("star-delta", "survival-time exponent on the star");
    add_common(star, star_o);
    star_o.n_list = "256,512,1024,2048,4096,8192";
    star_o.replicas = 200;
    star_o.lambda_list = "1.0";
    star_o.alpha_list = "1.0";
    std::string engine = "zchain";
    std::uint64_t max_phases = cpa::star::kNoPhaseCap;
    star->add_option("--engine", engine, "zchain|klchain|reduced|full")
        ->check(CLI::IsMember({"zchain", "klchain", "reduced", "full"}));
    star->add_option("--max-phases", max_phases, "phase cap for the chain engines");

    auto* oracle = app.add_subcommand("oracle-check", "monte carlo vs exact linear solve on tiny graphs");
    add_common(oracle, oracle_o);
    oracle_o.replicas = 100000;
    oracle_o.lambda_list = "0,0.5,1,2";
    oracle_o.alpha_list = "0,0.5,1,2";
    std::string graph = "path2";
    std::string start = "single";
    oracle->add_option("--graph", graph, "single|path2|path3|path4|cycle3|cycle4|star4");
    oracle->add_option("--start", start, "single|all")->check(CLI::IsMember({"single", "all"}));

    auto* blockc = app.add_subcommand("block", "good-block probability of the 4-vertex construction");
    add_common(blockc, block_o);
    block_o.lambda_list = "1000";
    block_o.alpha_list = "1";
    block_o.replicas = 2000;
    std::string block_start = "all";
    std::string boundary = "both";
    double tau = 8.0;
    blockc->add_option("--start", block_start, "A2O|A2L|A2R|all");
    blockc->add_option("--boundary", boundary, "closed|hostile|both");
    blockc->add_option("--tau", tau, "block time horizon");

    auto* perc = app.add_subcommand("percolation", "oriented site percolation comparison process");
    add_common(perc, perc_o);
    perc_o.replicas = 1000;
    std::string p_list = "0.9";
    int width = 64, height = 128, speed_height = 200;
    bool speed = false;
    perc->add_option("--p", p_list, "occupancy probability or list");
    perc->add_option("--width", width, "initial row width");
    perc->add_option("--height", height, "levels to simulate");
    perc->add_flag("--speed", speed, "also estimate the right-edge speed from a single site");
    perc->add_option("--speed-height", speed_height, "height for the speed estimate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (heat->parsed())
            return cmd_heatmap(heat_o, reduced_n, reduced_alpha_threshold, heat_records);
        if (zn->parsed())
            return cmd_zn_scaling(zn_o, zn_records);
        if (star->parsed())
            return cmd_star_delta(star_o, engine, max_phases);
        if (oracle->parsed())
            return cmd_oracle_check(oracle_o, graph, start);
        if (blockc->parsed())
            return cmd_block(block_o, block_start, tau, boundary);
        if (perc->parsed())
            return cmd_percolation(perc_o, p_list, width, height, speed, speed_height);
    } catch (const cpa::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
