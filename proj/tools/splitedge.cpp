// SPDX-License-Identifier: Apache-2.0
//
// splitedge: demand tables, feature codec runs, partition evaluation,
// optimization and bandwidth/power sweeps, all emitting CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitedge/curves.hpp"
#include "splitedge/featcodec.hpp"
#include "splitedge/hwmodel.hpp"
#include "splitedge/netmodel.hpp"
#include "splitedge/pipeline.hpp"
#include "splitedge/planner.hpp"
#include "splitedge/synth.hpp"
#include "splitedge/tensor_io.hpp"

namespace {

using namespace splitedge;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write '" + out_path + "'");
    f << text;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw ParseError(std::string(what) + ": empty list");
    return out;
}

int resolve_partition(const NetworkSpec& net, const std::string& s) {
    if (s == "input" || s == "host" || s == "-1") return -1;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
        // fall through to name lookup
    }
    return static_cast<int>(net.index_of(s));
}

int cmd_demand(const std::string& net_path, const std::string& out_path) {
    const NetworkSpec net = NetworkSpec::load(net_path);
    std::string csv = "name,kind,macs,weight_bytes,out_feature_bytes,cum_macs,cum_weight_bytes\n";
    csv += "input,input,0,0," + std::to_string(net.input_bytes()) + ",0,0\n";
    std::uint64_t cum_macs = 0;
    std::uint64_t cum_wb = 0;
    for (std::size_t i = 0; i < net.layer_count(); ++i) {
        const LayerDemand d = net.layer_demand(i);
        cum_macs += d.macs;
        cum_wb += d.weight_bytes;
        csv += net.layers()[i].name;
        csv += ',';
        csv += to_string(net.layers()[i].kind);
        csv += ',' + std::to_string(d.macs);
        csv += ',' + std::to_string(d.weight_bytes);
        csv += ',' + std::to_string(d.out_feature_bytes);
        csv += ',' + std::to_string(cum_macs);
        csv += ',' + std::to_string(cum_wb) + '\n';
    }
    write_output(out_path, csv);
    return 0;
}

int cmd_encode(const std::string& tensor_path, const std::string& encoding, int qf,
               const std::string& out_path) {
    const FeatureTensor t = read_ftr(tensor_path);
    EncodedStream s;
    if (encoding == "lossless") {
        s = encode_lossless(t);
    } else if (encoding == "lossy") {
        s = encode_lossy(t, qf);
    } else {
        throw ParseError("encode supports --encoding lossless|lossy");
    }
    if (out_path.empty()) throw ParseError("encode requires --out <file.fse>");
    s.save(out_path);
    const FeatureStats st = feature_stats(t);
    std::cout << "ratio,entropy_bits,nonzero_ratio\n"
              << fmt(compression_ratio(t, s)) << ',' << fmt(st.entropy_bits) << ','
              << fmt(st.nonzero_ratio) << '\n';
    return 0;
}

int cmd_decode(const std::string& stream_path, const std::string& out_path) {
    if (out_path.empty()) throw ParseError("decode requires --out <file.ftr>");
    const EncodedStream s = EncodedStream::load(stream_path);
    write_ftr(out_path, decode(s));
    return 0;
}

int cmd_stats(const std::string& tensor_path, const std::string& out_path) {
    const FeatureStats st = feature_stats(read_ftr(tensor_path));
    write_output(out_path, "entropy_bits,nonzero_ratio\n" + fmt(st.entropy_bits) + ',' +
                               fmt(st.nonzero_ratio) + '\n');
    return 0;
}

struct ModelArgs {
    std::string net, hw, ch, curves;
};

int cmd_evaluate(const ModelArgs& m, const std::string& partition, const std::string& encoding,
                 int qf, std::optional<double> max_loss, const std::string& out_path) {
    const NetworkSpec net = NetworkSpec::load(m.net);
    const HardwareSpec hw = HardwareSpec::load(m.hw);
    const ChannelSpec ch = ChannelSpec::load(m.ch);
    const AccuracyCurves curves = AccuracyCurves::load(m.curves);

    PartitionPoint pt;
    pt.index = resolve_partition(net, partition);
    pt.encoding = encoding_from_string(encoding);
    if (pt.encoding == Encoding::lossy) {
        if (qf > 0) {
            pt.qf = qf;
        } else if (max_loss) {
            const std::string layer = pt.index < 0 ? "input" : net.layers()[pt.index].name;
            pt.qf = select_qf(curves, layer, CurveVariant::original, *max_loss).qf;
        } else {
            throw ParseError("lossy evaluation needs --qf or --max-loss");
        }
    }
    const PartitionReport rep = evaluate(net, hw, ch, pt, curves);
    write_output(out_path, PartitionReport::csv_header() + '\n' + rep.csv_row(net.name()) + '\n');
    return 0;
}

int cmd_optimize(const ModelArgs& m, double max_loss, const std::string& objective,
                 const std::string& encoding, const std::string& out_path) {
    const NetworkSpec net = NetworkSpec::load(m.net);
    const HardwareSpec hw = HardwareSpec::load(m.hw);
    const ChannelSpec ch = ChannelSpec::load(m.ch);
    const AccuracyCurves curves = AccuracyCurves::load(m.curves);

    EncodingSet allowed = EncodingSet::all();
    if (encoding == "none") {
        allowed = EncodingSet::only_none();
    } else if (encoding == "lossless") {
        allowed = EncodingSet{false, true, false};
    } else if (encoding == "lossy") {
        allowed = EncodingSet{false, false, true};
    } else if (encoding != "all") {
        throw ParseError("optimize supports --encoding all|none|lossless|lossy");
    }

    const Objective obj = objective_from_string(objective);
    const OptimizeResult r = optimize_partition(net, hw, ch, curves, max_loss, obj, allowed);
    write_output(out_path, "objective," + PartitionReport::csv_header() + '\n' +
                               std::string(to_string(obj)) + ',' + r.report.csv_row(net.name()) +
                               '\n');
    return 0;
}

int cmd_sweep(const ModelArgs& m, double max_loss, const std::string& bw_list,
              const std::string& power_list, const std::string& out_path) {
    const NetworkSpec net = NetworkSpec::load(m.net);
    const HardwareSpec hw = HardwareSpec::load(m.hw);
    const AccuracyCurves curves = AccuracyCurves::load(m.curves);
    const SweepResult r = sweep(net, hw, curves, max_loss, parse_list(bw_list, "--bw-list"),
                                parse_list(power_list, "--power-list"));
    write_output(out_path, r.csv());
    return 0;
}

int cmd_gen(const std::string& shape_str, double ratio, const std::string& dist, double rate,
            double lo, double hi, double clustering, std::uint64_t seed,
            const std::string& out_path) {
    if (out_path.empty()) throw ParseError("gen requires --out <file.ftr>");
    const std::vector<double> dims = parse_list(shape_str, "--shape");
    if (dims.size() != 3) throw ParseError("--shape must be c,h,w");
    SynthSpec spec;
    spec.shape = Shape3{static_cast<std::uint32_t>(dims[0]), static_cast<std::uint32_t>(dims[1]),
                        static_cast<std::uint32_t>(dims[2])};
    spec.nonzero_ratio = ratio;
    if (dist == "exponential") {
        spec.dist = SynthSpec::Dist::exponential;
        spec.exp_rate = rate;
    } else if (dist == "uniform") {
        spec.dist = SynthSpec::Dist::uniform;
        spec.uniform_lo = lo;
        spec.uniform_hi = hi;
    } else {
        throw ParseError("gen supports --dist exponential|uniform");
    }
    spec.spatial_clustering = clustering;
    spec.seed = seed;
    write_ftr(out_path, generate(spec));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge-host DNN partitioning and feature-compression model"};
    app.require_subcommand(1);
    app.fallthrough();  // --out may follow any subcommand

    std::string out_path;
    app.add_option("--out", out_path, "output file (default: stdout)")->capture_default_str();

    ModelArgs model;
    std::string partition = "-1";
    std::string encoding = "all";
    std::string objective = "throughput";
    std::string bw_list, power_list, shape_str = "8,8,8", dist = "exponential";
    std::string tensor_path, stream_path;
    double max_loss = 1.0, ratio = 0.2, rate = 0.05, lo = 1.0, hi = 100.0, clustering = 0.0;
    int qf = 0;
    std::uint64_t seed = 1;
    bool have_max_loss = false;

    auto add_model_opts = [&](CLI::App* cmd, bool with_channel) {
        cmd->add_option("--net", model.net, "network description (.net)")->required();
        cmd->add_option("--hw", model.hw, "hardware description (.hw)")->required();
        if (with_channel) cmd->add_option("--ch", model.ch, "channel description (.ch)")->required();
        cmd->add_option("--curves", model.curves, "accuracy curves (.curves)")->required();
    };

    CLI::App* demand = app.add_subcommand("demand", "per-layer and cumulative demand table");
    demand->add_option("--net", model.net, "network description (.net)")->required();

    CLI::App* encode = app.add_subcommand("encode", "encode a raw tensor file to .fse");
    encode->add_option("tensor", tensor_path, "input tensor (.ftr)")->required();
    encode->add_option("--encoding", encoding, "lossless|lossy")->required();
    encode->add_option("--qf", qf, "quality factor (lossy)");

    CLI::App* decode = app.add_subcommand("decode", "decode an .fse stream to a raw tensor file");
    decode->add_option("stream", stream_path, "input stream (.fse)")->required();

    CLI::App* stats = app.add_subcommand("stats", "entropy and non-zero ratio of a tensor");
    stats->add_option("tensor", tensor_path, "input tensor (.ftr)")->required();

    CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate one partition point");
    add_model_opts(evaluate, true);
    evaluate->add_option("--partition", partition, "layer index or name; -1/input for host")
        ->required();
    evaluate->add_option("--encoding", encoding, "none|lossless|lossy")->required();
    evaluate->add_option("--qf", qf, "explicit quality factor (lossy)");
    evaluate->add_option("--max-loss", max_loss, "select qf by accuracy-loss bound (%)")
        ->each([&](const std::string&) { have_max_loss = true; });

    CLI::App* optimize = app.add_subcommand("optimize", "best partition for an objective");
    add_model_opts(optimize, true);
    optimize->add_option("--max-loss", max_loss, "accuracy-loss bound for lossy encoding (%)");
    optimize->add_option("--objective", objective, "throughput|energy");
    optimize->add_option("--encoding", encoding, "all|none|lossless|lossy");

    CLI::App* sweep = app.add_subcommand("sweep", "optimal partition over a bandwidth/power grid");
    add_model_opts(sweep, false);
    sweep->add_option("--max-loss", max_loss, "accuracy-loss bound for lossy encoding (%)");
    sweep->add_option("--bw-list", bw_list, "comma-separated datarates (bps)")->required();
    sweep->add_option("--power-list", power_list, "comma-separated transmit powers (W)")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic feature tensor");
    gen->add_option("--shape", shape_str, "tensor shape c,h,w");
    gen->add_option("--ratio", ratio, "target nonzero ratio [0,1]");
    gen->add_option("--dist", dist, "exponential|uniform");
    gen->add_option("--rate", rate, "exponential rate");
    gen->add_option("--lo", lo, "uniform lower bound");
    gen->add_option("--hi", hi, "uniform upper bound");
    gen->add_option("--clustering", clustering, "spatial clustering strength (>= 0)");
    gen->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (demand->parsed()) return cmd_demand(model.net, out_path);
        if (encode->parsed()) return cmd_encode(tensor_path, encoding, qf, out_path);
        if (decode->parsed()) return cmd_decode(stream_path, out_path);
        if (stats->parsed()) return cmd_stats(tensor_path, out_path);
        if (evaluate->parsed()) {
            return cmd_evaluate(model, partition, encoding, qf,
                                have_max_loss ? std::optional<double>(max_loss) : std::nullopt,
                                out_path);
        }
        if (optimize->parsed()) return cmd_optimize(model, max_loss, objective, encoding, out_path);
        if (sweep->parsed()) return cmd_sweep(model, max_loss, bw_list, power_list, out_path);
        if (gen->parsed()) {
            return cmd_gen(shape_str, ratio, dist, rate, lo, hi, clustering, seed, out_path);
        }
    } catch (const splitedge::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
