// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "splitedge/netmodel.hpp"
#include "support.hpp"

using namespace splitedge;
using testsupport::data_file;

namespace {

NetworkSpec parse_net(const std::string& json) {
    std::istringstream in(json);
    return NetworkSpec::parse(in, "<test>");
}

std::size_t count_kind(const NetworkSpec& net, LayerKind kind) {
    std::size_t n = 0;
    for (const auto& l : net.layers()) {
        if (l.kind == kind) ++n;
    }
    return n;
}

// Window-walk enumeration: count placements of a window of size k with
// stride s over an input of size n padded by p on both sides.
std::uint32_t enumerate_extent(std::uint32_t n, std::uint32_t k, std::uint32_t p,
                               std::uint32_t s) {
    std::uint32_t count = 0;
    for (std::uint64_t start = 0;; start += s) {
        if (start + k > n + 2ull * p) break;
        ++count;
    }
    return count;
}

}  // namespace

TEST_SUITE("netmodel") {

TEST_CASE("alexnet file loads with propagated shapes") {
    const NetworkSpec net = NetworkSpec::load(data_file("alexnet.net"));
    CHECK(net.name() == "alexnet");
    CHECK(net.input_shape() == Shape3{3, 227, 227});
    CHECK(net.feature_bits() == 16);
    CHECK(count_kind(net, LayerKind::conv) == 5);
    CHECK(count_kind(net, LayerKind::fc) == 3);
    CHECK(net.input_bytes() == 309174);  // 3*227*227*2

    CHECK(net.output_shape(net.index_of("conv1")) == Shape3{64, 55, 55});
    CHECK(net.output_shape(net.index_of("pool1")) == Shape3{64, 27, 27});
    CHECK(net.output_shape(net.index_of("conv5")) == Shape3{256, 13, 13});
    CHECK(net.output_shape(net.index_of("pool5")) == Shape3{256, 6, 6});
    CHECK(net.output_shape(net.index_of("fc8")) == Shape3{1000, 1, 1});
}

TEST_CASE("alexnet demand matches the published totals") {
    const NetworkSpec net = NetworkSpec::load(data_file("alexnet.net"));

    const LayerDemand conv1 = net.layer_demand(net.index_of("conv1"));
    CHECK(conv1.macs == 70276800);          // 11*11*3*64*55*55
    CHECK(conv1.weight_bytes == 46592);     // (11*11*3*64 + 64) * 2
    CHECK(conv1.out_feature_bytes == 387200);

    const LayerDemand conv5 = net.layer_demand(net.index_of("conv5"));
    CHECK(conv5.out_feature_bytes == 86528);  // 256*13*13*2
    CHECK(conv5.macs == 99680256);

    const LayerDemand fc6 = net.layer_demand(net.index_of("fc6"));
    CHECK(fc6.macs == 37748736);            // 9216*4096
    CHECK(fc6.weight_bytes == 75505664);

    const CumulativeDemand total = net.cumulative_demand(net.layer_count() - 1);
    CHECK(total.macs == 714188480);         // ~0.7e9
    CHECK(total.weight_bytes == 122201680); // 61,100,840 params at 16 bit
    CHECK(total.macs / 1e9 == doctest::Approx(0.7).epsilon(0.05));
    CHECK(total.weight_bytes / 2 / 1e6 == doctest::Approx(61.0).epsilon(0.01));
}

TEST_CASE("vgg16 file matches the published totals") {
    const NetworkSpec net = NetworkSpec::load(data_file("vgg16.net"));
    CHECK(count_kind(net, LayerKind::conv) == 13);
    CHECK(count_kind(net, LayerKind::fc) == 3);
    const CumulativeDemand total = net.cumulative_demand(net.layer_count() - 1);
    CHECK(total.macs == 15470264320ull);
    CHECK(total.weight_bytes == 2ull * 138357544);  // 138.36M params
}

TEST_CASE("resnet50 file loads and propagates to the classifier") {
    const NetworkSpec net = NetworkSpec::load(data_file("resnet50.net"));
    CHECK(count_kind(net, LayerKind::conv) == 49);
    CHECK(count_kind(net, LayerKind::fc) == 1);
    CHECK(net.output_shape(net.layer_count() - 1) == Shape3{1000, 1, 1});
}

TEST_CASE("invalid layer chains are rejected with the layer named") {
    const std::string stride_zero = R"({
        "name": "bad", "input_shape": [1, 8, 8],
        "layers": [{"name": "c0", "kind": "conv", "kernel_h": 3, "kernel_w": 3,
                    "stride": 0, "pad": 0, "out_channels": 4}]})";
    CHECK_THROWS_WITH_AS(parse_net(stride_zero), doctest::Contains("c0"), ShapeError);

    const std::string kernel_too_big = R"({
        "name": "bad", "input_shape": [1, 4, 4],
        "layers": [{"name": "huge", "kind": "conv", "kernel_h": 9, "kernel_w": 9,
                    "stride": 1, "pad": 0, "out_channels": 4}]})";
    CHECK_THROWS_WITH_AS(parse_net(kernel_too_big), doctest::Contains("huge"), ShapeError);

    const std::string unknown_kind = R"({
        "name": "bad", "input_shape": [1, 4, 4],
        "layers": [{"name": "x", "kind": "softmax"}]})";
    CHECK_THROWS_AS(parse_net(unknown_kind), ParseError);

    const std::string no_layers = R"({"name": "bad", "input_shape": [1, 4, 4], "layers": []})";
    CHECK_THROWS_AS(parse_net(no_layers), ParseError);
}

TEST_CASE("minimal fc layer demand") {
    const std::string one_fc = R"({
        "name": "tiny", "input_shape": [1, 1, 1],
        "layers": [{"name": "fc", "kind": "fc", "out_features": 1}]})";
    const NetworkSpec net = parse_net(one_fc);
    const LayerDemand d = net.layer_demand(0);
    CHECK(d.macs == 1);
    CHECK(d.weight_bytes == 4);  // one weight + one bias at 16 bit
}

TEST_CASE("conv shape propagation agrees with window enumeration") {
    testsupport::Rng rng(0xC0FFEE);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint32_t n = static_cast<std::uint32_t>(rng.range(1, 40));
        const std::uint32_t k = static_cast<std::uint32_t>(rng.range(1, 7));
        const std::uint32_t p = static_cast<std::uint32_t>(rng.range(0, 3));
        const std::uint32_t s = static_cast<std::uint32_t>(rng.range(1, 4));
        if (n + 2 * p < k) continue;

        std::vector<LayerSpec> layers(1);
        layers[0].name = "c";
        layers[0].kind = LayerKind::conv;
        layers[0].kernel_h = k;
        layers[0].kernel_w = k;
        layers[0].stride = s;
        layers[0].pad = p;
        layers[0].out_channels = 2;
        const NetworkSpec net("t", Shape3{1, n, n}, std::move(layers));
        CHECK(net.output_shape(0).h == enumerate_extent(n, k, p, s));
        CHECK(net.output_shape(0).w == enumerate_extent(n, k, p, s));
    }
}

TEST_CASE("cumulative demand is the prefix sum and is monotone") {
    const NetworkSpec net = NetworkSpec::load(data_file("alexnet.net"));
    std::uint64_t macs = 0, wb = 0;
    for (std::size_t k = 0; k < net.layer_count(); ++k) {
        const LayerDemand d = net.layer_demand(k);
        const CumulativeDemand prev = k == 0 ? CumulativeDemand{} : net.cumulative_demand(k - 1);
        macs += d.macs;
        wb += d.weight_bytes;
        const CumulativeDemand cum = net.cumulative_demand(k);
        CHECK(cum.macs == macs);
        CHECK(cum.weight_bytes == wb);
        CHECK(cum.macs >= prev.macs);
        CHECK(cum.weight_bytes >= prev.weight_bytes);
    }
    CHECK(net.cumulative_demand(0).macs == net.layer_demand(0).macs);
}

TEST_CASE("feature bytes chain across consecutive layers") {
    for (const char* file : {"alexnet.net", "vgg16.net", "resnet50.net"}) {
        const NetworkSpec net = NetworkSpec::load(data_file(file));
        CHECK(net.layer_demand(0).in_feature_bytes == net.input_bytes());
        for (std::size_t k = 0; k + 1 < net.layer_count(); ++k) {
            CHECK(net.layer_demand(k).out_feature_bytes ==
                  net.layer_demand(k + 1).in_feature_bytes);
        }
    }
}

TEST_CASE("out-of-range indices and unknown names throw") {
    const NetworkSpec net = NetworkSpec::load(data_file("alexnet.net"));
    CHECK_THROWS_AS((void)net.layer_demand(net.layer_count()), ShapeError);
    CHECK_THROWS_AS((void)net.cumulative_demand(net.layer_count()), ShapeError);
    CHECK_THROWS_AS((void)net.output_shape(net.layer_count()), ShapeError);
    CHECK_THROWS_AS((void)net.index_of("does_not_exist"), ParseError);
}

}  // TEST_SUITE
