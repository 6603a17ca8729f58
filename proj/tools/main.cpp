// Command-line front end: synthetic series generation, encrypted-path change
// detection, the cleartext mirror, the local-noise privacy baseline, op-count
// benchmarking, and encrypted-vs-noise accuracy comparison.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecpd/datagen.hpp"
#include "ecpd/dp.hpp"
#include "ecpd/pipeline.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kLowConfidence = 3;
constexpr int kDepthOverflow = 4;
constexpr int kIoError = 5;
constexpr const char* kSchema = "ecpd/1";

// ---------------------------------------------------------------- I/O helpers

std::vector<double> readSeries(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) {
            throw std::ios_base::failure("cannot open input file: " + path);
        }
        in = &file;
    }
    std::vector<double> values;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) {
            return;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
            values.push_back(v);
        } catch (const std::exception&) {
            throw std::ios_base::failure("malformed number in input: " + token);
        }
        token.clear();
    };
    char c;
    while (in->get(c)) {
        if (c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t') {
            flush();
        } else {
            token.push_back(c);
        }
    }
    flush();
    if (values.empty()) {
        throw std::ios_base::failure("input contained no numeric samples");
    }
    return values;
}

void writeText(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw std::ios_base::failure("cannot open output file: " + path);
    }
    file << text;
    if (!text.empty() && text.back() != '\n') {
        file << '\n';
    }
}

// ------------------------------------------------------------- enum mappings

const std::map<std::string, ecpd::StatKind> kStatNames = {
    {"mean", ecpd::StatKind::Mean},
    {"variance", ecpd::StatKind::Variance},
    {"turning", ecpd::StatKind::TurningRate},
};

const std::map<std::string, ecpd::ShiftKind> kShiftNames = {
    {"mean", ecpd::ShiftKind::MeanShift},
    {"variance", ecpd::ShiftKind::VarianceShift},
    {"ar1", ecpd::ShiftKind::Ar1Shift},
};

const std::map<std::string, ecpd::NoiseKind> kNoiseNames = {
    {"gaussian", ecpd::NoiseKind::Gaussian},
    {"uniform", ecpd::NoiseKind::Uniform},
    {"laplace", ecpd::NoiseKind::Laplace},
    {"student-t5", ecpd::NoiseKind::StudentT5},
};

std::string statName(ecpd::StatKind kind) {
    for (const auto& [name, k] : kStatNames) {
        if (k == kind) {
            return name;
        }
    }
    return "?";
}

// The statistic that targets what a shift kind changes.
ecpd::StatKind statForShift(ecpd::ShiftKind shift) {
    switch (shift) {
    case ecpd::ShiftKind::MeanShift:
        return ecpd::StatKind::Mean;
    case ecpd::ShiftKind::VarianceShift:
        return ecpd::StatKind::Variance;
    case ecpd::ShiftKind::Ar1Shift:
        return ecpd::StatKind::TurningRate;
    }
    return ecpd::StatKind::Mean;
}

// --------------------------------------------------------------- JSON shapes

json countersJson(const ecpd::OpCounters& c) {
    return json{{"cipher_mults", c.cipherMults}, {"plain_mults", c.plainMults},
                {"mask_mults", c.maskMults},     {"rotations", c.rotations},
                {"additions", c.additions},      {"compares", c.compares},
                {"algorithm_mults", c.algorithmMults()},
                {"total_mults", c.totalMults()}};
}

json configJson(const ecpd::CPDConfig& cfg) {
    return json{{"stat", statName(cfg.stat)},
                {"block_size", cfg.blockSize},
                {"bounds", {cfg.boundLow, cfg.boundHigh}},
                {"df", cfg.sign.df},
                {"dg", cfg.sign.dg},
                {"depth_budget", cfg.depthBudget},
                {"noise_stddev", cfg.noiseStddev},
                {"seed", cfg.seed},
                {"fast_argmax", cfg.fastArgmax}};
}

json resultJson(const ecpd::ChangePointResult& r) {
    return json{{"tau_block", r.tauBlock},
                {"tau_index", r.tauIndex},
                {"confidence_ok", r.confidenceOk},
                {"one_hot", r.oneHot},
                {"diagnostics",
                 {{"ops", countersJson(r.diag.ops)},
                  {"max_depth", r.diag.maxDepth},
                  {"clamped_samples", r.diag.clampedSamples},
                  {"blocks", r.diag.blocks},
                  {"block_size", r.diag.blockSize},
                  {"grid_dim", r.diag.gridDim},
                  {"peak", r.diag.peak},
                  {"top_gap", r.diag.topGap},
                  {"second_gap", r.diag.secondGap}}}};
}

json plainJson(const ecpd::PlainDetection& d) {
    return json{{"tau_block", d.tauBlock},
                {"tau_index", d.tauIndex},
                {"top_gap", d.cusum.topGap},
                {"second_gap", d.cusum.secondGap},
                {"margin", d.cusum.margin()}};
}

// ------------------------------------------------------------- SVG rendering

// Minimal line chart: relative error vs epsilon for the noise baseline, with
// a horizontal reference for the encrypted path.
std::string renderSvg(const std::vector<double>& epsilons,
                      const std::vector<double>& dpErrors, double encryptedError) {
    const double w = 640, h = 400, ml = 60, mr = 20, mt = 30, mb = 50;
    double emin = epsilons.front(), emax = epsilons.back();
    double ymax = encryptedError;
    for (double v : dpErrors) {
        ymax = std::max(ymax, v);
    }
    ymax = std::max(ymax * 1.1, 0.05);
    auto x = [&](double eps) {
        const double lo = std::log(emin), hi = std::log(emax);
        return ml + (std::log(eps) - lo) / (hi - lo) * (w - ml - mr);
    };
    auto y = [&](double err) { return h - mb - err / ymax * (h - mt - mb); };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
        << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        svg << x(epsilons[i]) << ',' << y(dpErrors[i]) << ' ';
    }
    svg << "\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << y(encryptedError) << "\" x2=\""
        << w - mr << "\" y2=\"" << y(encryptedError)
        << "\" stroke=\"#2471a3\" stroke-dasharray=\"6 4\" stroke-width=\"2\"/>\n";
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        svg << "<text x=\"" << x(epsilons[i]) << "\" y=\"" << h - mb + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << epsilons[i]
            << "</text>\n";
        svg << "<circle cx=\"" << x(epsilons[i]) << "\" cy=\"" << y(dpErrors[i])
            << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    }
    for (int t = 0; t <= 4; ++t) {
        const double v = ymax * t / 4.0;
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << y(v) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << std::round(v * 100) / 100
            << "</text>\n";
    }
    svg << "<text x=\"" << (w / 2) << "\" y=\"" << h - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">privacy budget</text>\n"
        << "<text x=\"18\" y=\"" << (h / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (h / 2) << ")\">mean relative error</text>\n"
        << "<text x=\"" << w - mr << "\" y=\"" << y(encryptedError) - 6
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#2471a3\">encrypted</text>\n"
        << "<text x=\"" << w - mr << "\" y=\"" << mt
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#c0392b\">clip+noise baseline</text>\n"
        << "</svg>\n";
    return svg.str();
}

// -------------------------------------------------------------- subcommands

struct GenerateOpts {
    ecpd::SeriesSpec spec;
    std::string shiftName = "mean";
    std::string noiseName = "gaussian";
    std::string out = "-";
    std::string format = "csv";
};

int runGenerate(GenerateOpts& o) {
    o.spec.shift = kShiftNames.at(o.shiftName);
    o.spec.noise = kNoiseNames.at(o.noiseName);
    const ecpd::GeneratedSeries series = ecpd::genSeries(o.spec);
    const json meta = {{"schema", kSchema},
                       {"n", series.values.size()},
                       {"tau", series.tau},
                       {"suggested_low", series.suggestedLow},
                       {"suggested_high", series.suggestedHigh}};
    if (o.format == "json") {
        json out = meta;
        out["values"] = series.values;
        writeText(o.out, out.dump(2));
        return kOk;
    }
    std::ostringstream csv;
    csv.precision(17);
    for (double v : series.values) {
        csv << v << '\n';
    }
    writeText(o.out, csv.str());
    std::cerr << meta.dump() << '\n';
    return kOk;
}

struct DetectOpts {
    std::string input = "-";
    std::string statName = "mean";
    std::string out = "-";
    std::vector<double> bounds = {0.0, 1.0};
    ecpd::CPDConfig cfg;
};

int runDetect(DetectOpts& o) {
    o.cfg.stat = kStatNames.at(o.statName);
    o.cfg.boundLow = o.bounds[0];
    o.cfg.boundHigh = o.bounds[1];
    const std::vector<double> series = readSeries(o.input);
    const ecpd::ChangePointResult result = ecpd::detect(series, o.cfg);
    json out = {{"schema", kSchema},
                {"command", "detect"},
                {"config", configJson(o.cfg)},
                {"result", resultJson(result)}};
    writeText(o.out, out.dump(2));
    return result.confidenceOk ? kOk : kLowConfidence;
}

int runDetectPlain(DetectOpts& o) {
    o.cfg.stat = kStatNames.at(o.statName);
    o.cfg.boundLow = o.bounds[0];
    o.cfg.boundHigh = o.bounds[1];
    const std::vector<double> series = readSeries(o.input);
    const ecpd::PlainDetection det = ecpd::detectMirror(series, o.cfg);
    json out = {{"schema", kSchema},
                {"command", "detect-plain"},
                {"config",
                 {{"stat", o.statName},
                  {"block_size", o.cfg.blockSize},
                  {"bounds", o.bounds}}},
                {"result", plainJson(det)}};
    writeText(o.out, out.dump(2));
    return kOk;
}

struct DpOpts {
    std::string input = "-";
    std::string statName = "mean";
    std::string out = "-";
    std::size_t blockSize = 0;
    ecpd::DpParams params;
    double delta = 0.0; // 0 -> 1/n^2
    std::uint64_t seed = 0;
};

int runDetectDp(DpOpts& o) {
    const ecpd::StatKind stat = kStatNames.at(o.statName);
    const std::vector<double> series = readSeries(o.input);
    o.params.delta = o.delta > 0.0
                         ? o.delta
                         : 1.0 / (static_cast<double>(series.size()) *
                                  static_cast<double>(series.size()));
    const ecpd::DpDetection det =
        ecpd::detectDp(series, o.blockSize, stat, o.params, o.seed);
    json out = {{"schema", kSchema},
                {"command", "detect-dp"},
                {"config",
                 {{"stat", o.statName},
                  {"block_size", o.blockSize},
                  {"epsilon", o.params.epsilon},
                  {"delta", o.params.delta},
                  {"clip", o.params.clipBound},
                  {"seed", o.seed}}},
                {"result",
                 {{"tau_block", det.detection.tauBlock},
                  {"tau_index", det.detection.tauIndex},
                  {"sigma", det.sigma},
                  {"clamped_samples", det.clamped},
                  {"epsilon_check",
                   ecpd::dpEpsilonForSigma(det.sigma, o.params.delta,
                                           o.params.clipBound)}}}};
    writeText(o.out, out.dump(2));
    return kOk;
}

struct BenchOpts {
    std::vector<std::size_t> nGrid = {1000, 10000, 40000};
    std::string shiftName = "mean";
    std::string noiseName = "gaussian";
    std::uint64_t seed = 1;
    ecpd::SignApproxParams sign;
    std::string out = "-";
};

int runBench(BenchOpts& o) {
    json rows = json::array();
    for (std::size_t n : o.nGrid) {
        ecpd::SeriesSpec spec;
        spec.n = n;
        spec.shift = kShiftNames.at(o.shiftName);
        spec.noise = kNoiseNames.at(o.noiseName);
        spec.seed = o.seed;
        const ecpd::GeneratedSeries series = ecpd::genSeries(spec);

        ecpd::CPDConfig cfg;
        cfg.stat = statForShift(spec.shift);
        cfg.boundLow = series.suggestedLow;
        cfg.boundHigh = series.suggestedHigh;
        cfg.sign = o.sign;

        const auto start = std::chrono::steady_clock::now();
        const ecpd::ChangePointResult result = ecpd::detect(series.values, cfg);
        const auto stop = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration_cast<std::chrono::microseconds>(stop - start)
                .count() /
            1000.0;

        const ecpd::PlainDetection mirror = ecpd::detectMirror(series.values, cfg);
        rows.push_back({{"n", n},
                        {"block_size", result.diag.blockSize},
                        {"blocks", result.diag.blocks},
                        {"grid_dim", result.diag.gridDim},
                        {"true_tau", series.tau},
                        {"tau_index", result.tauIndex},
                        {"mirror_tau_index", mirror.tauIndex},
                        {"confidence_ok", result.confidenceOk},
                        {"max_depth", result.diag.maxDepth},
                        {"wall_ms", ms},
                        {"ops", countersJson(result.diag.ops)}});
    }
    writeText(o.out, json{{"schema", kSchema}, {"command", "bench"}, {"rows", rows}}
                         .dump(2));
    return kOk;
}

struct CompareOpts {
    std::size_t n = 10000;
    std::size_t seeds = 20;
    std::vector<double> epsilons = {0.5, 1, 2, 5, 10, 25, 50};
    std::string shiftName = "ar1";
    std::string noiseName = "gaussian";
    double clip = 1.0;
    double delta = 0.0;
    std::size_t blockSize = 0;
    std::string out = "-";
    std::string svgPath;
};

int runCompare(CompareOpts& o) {
    const double delta =
        o.delta > 0.0 ? o.delta
                      : 1.0 / (static_cast<double>(o.n) * static_cast<double>(o.n));
    const ecpd::ShiftKind shift = kShiftNames.at(o.shiftName);
    const ecpd::StatKind stat = statForShift(shift);

    double encryptedErrSum = 0.0;
    std::size_t encryptedHits = 0;
    std::vector<double> dpErrSums(o.epsilons.size(), 0.0);

    for (std::size_t s = 0; s < o.seeds; ++s) {
        ecpd::SeriesSpec spec;
        spec.n = o.n;
        spec.shift = shift;
        spec.noise = kNoiseNames.at(o.noiseName);
        spec.seed = 1000 + s;
        const ecpd::GeneratedSeries series = ecpd::genSeries(spec);

        ecpd::CPDConfig cfg;
        cfg.stat = stat;
        cfg.blockSize = o.blockSize;
        cfg.boundLow = series.suggestedLow;
        cfg.boundHigh = series.suggestedHigh;
        const ecpd::ChangePointResult enc = ecpd::detect(series.values, cfg);
        encryptedErrSum += ecpd::relativeError(enc.tauIndex, series.tau);
        encryptedHits += enc.confidenceOk ? 1 : 0;

        for (std::size_t e = 0; e < o.epsilons.size(); ++e) {
            ecpd::DpParams params;
            params.epsilon = o.epsilons[e];
            params.delta = delta;
            params.clipBound = o.clip;
            const ecpd::DpDetection dp = ecpd::detectDp(
                series.values, o.blockSize, stat, params, 77000 + s);
            dpErrSums[e] +=
                ecpd::relativeError(dp.detection.tauIndex, series.tau);
        }
    }

    const double encErr = encryptedErrSum / static_cast<double>(o.seeds);
    json dpRows = json::array();
    std::vector<double> dpMeans(o.epsilons.size());
    for (std::size_t e = 0; e < o.epsilons.size(); ++e) {
        dpMeans[e] = dpErrSums[e] / static_cast<double>(o.seeds);
        ecpd::DpParams params;
        params.epsilon = o.epsilons[e];
        params.delta = delta;
        params.clipBound = o.clip;
        dpRows.push_back({{"epsilon", o.epsilons[e]},
                          {"sigma", ecpd::dpSigma(params)},
                          {"mean_rel_error", dpMeans[e]}});
    }

    json out = {{"schema", kSchema},
                {"command", "compare"},
                {"config",
                 {{"n", o.n},
                  {"seeds", o.seeds},
                  {"shift", o.shiftName},
                  {"noise", o.noiseName},
                  {"stat", statName(stat)},
                  {"delta", delta},
                  {"clip", o.clip}}},
                {"encrypted",
                 {{"mean_rel_error", encErr},
                  {"confident_runs", encryptedHits},
                  {"runs", o.seeds}}},
                {"noise_baseline", dpRows}};
    writeText(o.out, out.dump(2));
    if (!o.svgPath.empty()) {
        writeText(o.svgPath, renderSvg(o.epsilons, dpMeans, encErr));
    }
    return kOk;
}

struct ResolutionOpts {
    ecpd::SignApproxParams sign;
    double accuracy = 0.01;
    double step = 1e-4;
    std::string out = "-";
};

int runResolution(ResolutionOpts& o) {
    const double gamma = ecpd::resolutionBound(o.sign, o.accuracy, o.step);
    json out = {{"schema", kSchema},
                {"command", "resolution"},
                {"df", o.sign.df},
                {"dg", o.sign.dg},
                {"accuracy", o.accuracy},
                {"step", o.step},
                {"gamma", gamma},
                {"mult_cost", ecpd::compareMultCost(o.sign)},
                {"depth_cost", ecpd::compareDepthCost(o.sign)}};
    writeText(o.out, out.dump(2));
    return kOk;
}

void addSignOptions(CLI::App* cmd, ecpd::SignApproxParams& sign) {
    cmd->add_option("--df", sign.df, "sharpening stages of the sign approximation");
    cmd->add_option("--dg", sign.dg, "herding stages of the sign approximation");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Privacy-preserving change-point detection over a SIMD "
                 "slot-semantics backend"};
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* cGen = app.add_subcommand("generate", "synthesize a single-change series");
    cGen->add_option("--n", gen.spec.n, "series length")->required();
    cGen->add_option("--tau", gen.spec.tau, "change index (0 = n/2)");
    cGen->add_option("--type", gen.shiftName, "shift kind")
        ->check(CLI::IsMember({"mean", "variance", "ar1"}));
    cGen->add_option("--noise", gen.noiseName, "noise family")
        ->check(CLI::IsMember({"gaussian", "uniform", "laplace", "student-t5"}));
    cGen->add_option("--mu-before", gen.spec.muBefore, "pre-change level");
    cGen->add_option("--mu-after", gen.spec.muAfter, "post-change level");
    cGen->add_option("--var-before", gen.spec.varBefore, "pre-change variance");
    cGen->add_option("--var-after", gen.spec.varAfter, "post-change variance");
    cGen->add_option("--phi-before", gen.spec.phiBefore, "pre-change AR(1) phi");
    cGen->add_option("--phi-after", gen.spec.phiAfter, "post-change AR(1) phi");
    cGen->add_option("--innovation-var", gen.spec.innovationVar,
                     "AR(1) innovation variance");
    cGen->add_option("--seed", gen.spec.seed, "generator seed");
    cGen->add_option("--out", gen.out, "output path ('-' = stdout)");
    cGen->add_option("--format", gen.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    DetectOpts det;
    CLI::App* cDet = app.add_subcommand("detect", "encrypted-path detection");
    cDet->add_option("--input", det.input, "series file, csv ('-' = stdin)");
    cDet->add_option("--type", det.statName, "statistic to track")
        ->check(CLI::IsMember({"mean", "variance", "turning"}));
    cDet->add_option("--block-size", det.cfg.blockSize, "samples per block (0 = auto)");
    cDet->add_option("--bounds", det.bounds, "normalization bounds: low high")
        ->expected(2);
    addSignOptions(cDet, det.cfg.sign);
    cDet->add_option("--depth-budget", det.cfg.depthBudget,
                     "multiplicative depth budget");
    cDet->add_option("--noise-stddev", det.cfg.noiseStddev,
                     "per-multiplication slot noise of the emulated backend");
    cDet->add_option("--seed", det.cfg.seed, "noise seed");
    cDet->add_flag("--slow-argmax", [&det](std::int64_t) { det.cfg.fastArgmax = false; },
                   "use the rank+indicator argmax instead of the product argmax");
    cDet->add_option("--out", det.out, "output path ('-' = stdout)");

    DetectOpts plain;
    CLI::App* cPlain =
        app.add_subcommand("detect-plain", "cleartext reference detection");
    cPlain->add_option("--input", plain.input, "series file, csv ('-' = stdin)");
    cPlain->add_option("--type", plain.statName, "statistic to track")
        ->check(CLI::IsMember({"mean", "variance", "turning"}));
    cPlain->add_option("--block-size", plain.cfg.blockSize,
                       "samples per block (0 = auto)");
    cPlain->add_option("--bounds", plain.bounds, "normalization bounds: low high")
        ->expected(2);
    cPlain->add_option("--out", plain.out, "output path ('-' = stdout)");

    DpOpts dp;
    CLI::App* cDp =
        app.add_subcommand("detect-dp", "clip+noise privacy baseline detection");
    cDp->add_option("--input", dp.input, "series file, csv ('-' = stdin)");
    cDp->add_option("--type", dp.statName, "statistic to track")
        ->check(CLI::IsMember({"mean", "variance", "turning"}));
    cDp->add_option("--block-size", dp.blockSize, "samples per block (0 = auto)");
    cDp->add_option("--epsilon", dp.params.epsilon, "privacy budget");
    cDp->add_option("--delta", dp.delta, "privacy delta (0 = 1/n^2)");
    cDp->add_option("--clip", dp.params.clipBound, "clip bound M");
    cDp->add_option("--seed", dp.seed, "noise seed");
    cDp->add_option("--out", dp.out, "output path ('-' = stdout)");

    BenchOpts bench;
    CLI::App* cBench =
        app.add_subcommand("bench", "operation counts and wall time over an n grid");
    cBench->add_option("--n-grid", bench.nGrid, "series lengths");
    cBench->add_option("--type", bench.shiftName, "shift kind")
        ->check(CLI::IsMember({"mean", "variance", "ar1"}));
    cBench->add_option("--noise", bench.noiseName, "noise family")
        ->check(CLI::IsMember({"gaussian", "uniform", "laplace", "student-t5"}));
    cBench->add_option("--seed", bench.seed, "generator seed");
    addSignOptions(cBench, bench.sign);
    cBench->add_option("--out", bench.out, "output path ('-' = stdout)");

    CompareOpts cmp;
    CLI::App* cCmp = app.add_subcommand(
        "compare", "encrypted path vs clip+noise baseline across privacy budgets");
    cCmp->add_option("--n", cmp.n, "series length");
    cCmp->add_option("--seeds", cmp.seeds, "number of random instances");
    cCmp->add_option("--epsilons", cmp.epsilons, "privacy budgets to sweep");
    cCmp->add_option("--type", cmp.shiftName, "shift kind")
        ->check(CLI::IsMember({"mean", "variance", "ar1"}));
    cCmp->add_option("--noise", cmp.noiseName, "noise family")
        ->check(CLI::IsMember({"gaussian", "uniform", "laplace", "student-t5"}));
    cCmp->add_option("--clip", cmp.clip, "clip bound M for the baseline");
    cCmp->add_option("--delta", cmp.delta, "privacy delta (0 = 1/n^2)");
    cCmp->add_option("--block-size", cmp.blockSize, "samples per block (0 = auto)");
    cCmp->add_option("--out", cmp.out, "output path ('-' = stdout)");
    cCmp->add_option("--svg", cmp.svgPath, "also render a line chart to this path");

    ResolutionOpts res;
    CLI::App* cRes = app.add_subcommand(
        "resolution", "measured decision resolution of the comparator");
    addSignOptions(cRes, res.sign);
    cRes->add_option("--accuracy", res.accuracy, "tolerated comparison error");
    cRes->add_option("--step", res.step, "scan grid step");
    cRes->add_option("--out", res.out, "output path ('-' = stdout)");

    try {
        app.parse(argc, argv);
        if (cGen->parsed()) return runGenerate(gen);
        if (cDet->parsed()) return runDetect(det);
        if (cPlain->parsed()) return runDetectPlain(plain);
        if (cDp->parsed()) return runDetectDp(dp);
        if (cBench->parsed()) return runBench(bench);
        if (cCmp->parsed()) return runCompare(cmp);
        if (cRes->parsed()) return runResolution(res);
        return kUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const ecpd::DepthOverflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDepthOverflow;
    } catch (const ecpd::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
