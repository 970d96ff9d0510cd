#include "doctest.h"

#include "freqnet/config.hpp"
#include "freqnet/errors.hpp"
#include "freqnet/model.hpp"
#include "test_util.hpp"

using namespace freqnet;
using nlohmann::json;

TEST_CASE("default config is the main experiment shape") {
    const RunConfig cfg;
    CHECK(cfg.image_side == 128);
    CHECK(cfg.slicing_levels == 1);
    CHECK(cfg.pooling.size == 4);
    CHECK(cfg.feature_length() == 16);
    CHECK(cfg.mlp.hidden == std::vector<std::size_t>{16});
    CHECK(cfg.train.learning_rate == 0.01);
    CHECK(cfg.train.batch_size == 4);
    CHECK(cfg.train.momentum == 0.9);
    CHECK(cfg.train.epochs == 100);
    CHECK(cfg.train.split_fraction == 0.75);
    CHECK(cfg.filter_init.center == 0.1);
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("config JSON round trip") {
    RunConfig cfg;
    cfg.image_side = 64;
    cfg.slicing_levels = 3;
    cfg.pooling = {2, DistanceMetric::euclidean};
    cfg.features.normalization = SpectrumNormalization::unitary;
    cfg.mlp.hidden = {32, 8};
    cfg.mlp.activation = Activation::relu;
    cfg.train.lr_decay = 0.005;
    cfg.train.seed = 0xFFFFFFFFFFFFFFFFull;
    CHECK(config_from_json(to_json(cfg)) == cfg);
    CHECK(config_from_json(json::parse(to_json(cfg).dump())) == cfg);
}

TEST_CASE("partial config fills defaults") {
    const auto cfg = config_from_json(json::parse(R"({"train": {"epochs": 5}, "pooling": {"metric": "euclidean"}})"));
    CHECK(cfg.train.epochs == 5);
    CHECK(cfg.pooling.metric == DistanceMetric::euclidean);
    CHECK(cfg.pooling.size == 4);
}

TEST_CASE("config rejections") {
    auto bad = [](const char* text) { return config_from_json(json::parse(text)); };
    CHECK_THROWS_AS(bad(R"({"image_sid": 128})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"train": {"learning_rate": 0.1}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"image_side": 127})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"image_side": -4})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"image_side": 12.5})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"pooling": {"size": 3}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"pooling": {"metric": "taxicab"}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"slicing_levels": 7})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"train": {"momentum": 1.0}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"train": {"lr": 0}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"train": {"batch_size": 0}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"mlp": {"hidden": [4, 0]}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"mlp": {"hidden": 4}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"([1, 2])"), ConfigError);
}

TEST_CASE("load_config errors") {
    testutil::TempDir dir;
    CHECK_THROWS_AS(load_config(dir / "none.json"), IoError);
    testutil::write_bytes(dir / "broken.json", "{ nope");
    CHECK_THROWS_AS(load_config(dir / "broken.json"), ConfigError);
    testutil::write_bytes(dir / "ok.json", R"({"image_side": 64})");
    CHECK(load_config(dir / "ok.json").image_side == 64);
}

TEST_CASE("init_model shapes and seeding") {
    RunConfig cfg;
    cfg.slicing_levels = 2;
    cfg.mlp.hidden = {5, 3};
    const auto m = init_model(cfg, {"a", "b", "c"}, 4);
    CHECK(m.filters.values.size() == 16 + 4 * 8);
    CHECK(m.mlp.layer_sizes == std::vector<std::size_t>{48, 5, 3, 3});
    for (double w : m.filters.values) {
        CHECK(w >= 0.09);
        CHECK(w <= 0.11);
    }
    const auto again = init_model(cfg, {"a", "b", "c"}, 4);
    CHECK(again.filters == m.filters);
    CHECK(again.mlp.weights == m.mlp.weights);
    CHECK_THROWS_AS(init_model(cfg, {"solo"}, 0), InvalidArgument);
}

TEST_CASE("checkpoint round trip is exact") {
    RunConfig cfg;
    cfg.mlp.hidden = {7};
    const auto m = init_model(cfg, {"x", "y"}, 12);
    testutil::TempDir dir;
    save_checkpoint(m, dir / "m.json");
    const auto back = load_checkpoint(dir / "m.json");
    CHECK(back.config == m.config);
    CHECK(back.class_names == m.class_names);
    CHECK(back.filters == m.filters);
    CHECK(back.mlp.weights == m.mlp.weights);
    CHECK(back.mlp.biases == m.mlp.biases);
    CHECK(back.mlp.layer_sizes == m.mlp.layer_sizes);
    const auto j = json::parse(testutil::read_bytes(dir / "m.json"));
    CHECK(j.at("format_version") == 1);
    CHECK(config_from_json(j.at("config")) == cfg);
}

TEST_CASE("checkpoint rejections") {
    const auto good = checkpoint_to_json(init_model(RunConfig{}, {"x", "y"}, 1));
    auto broken = [&](auto mutate) {
        json j = good;
        mutate(j);
        return j;
    };
    CHECK_NOTHROW(checkpoint_from_json(good));
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j["format_version"] = 2; })), CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j.erase("mlp"); })), CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j["filter_weights"].erase(0); })), CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j["mlp"]["weights"][0].erase(0); })), CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j["class_names"] = json::array({"x"}); })),
                    CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j["config"]["image_side"] = 7; })), CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(broken([](json& j) { j["filter_weights"][0] = "a"; })), CheckpointError);
    CHECK_THROWS_AS(checkpoint_from_json(json::array()), CheckpointError);

    testutil::TempDir dir;
    CHECK_THROWS_AS(load_checkpoint(dir / "missing.json"), IoError);
    testutil::write_bytes(dir / "bad.json", "{\"format_version\": 1,");
    CHECK_THROWS_AS(load_checkpoint(dir / "bad.json"), CheckpointError);
}
