#include "freqnet/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "freqnet/errors.hpp"
#include "freqnet/slicing.hpp"

namespace freqnet {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
        }
    }
}

std::string qualified(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
}

template <typename T>
void read(const json& obj, const std::string& where, const std::string& key, T& out) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    const std::string name = qualified(where, key);
    if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
        if (!it->is_number_unsigned()) {
            throw ConfigError("'" + name + "' must be a non-negative integer");
        }
        out = it->get<T>();
    } else if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError("'" + name + "' must be a number");
        out = it->get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw ConfigError("'" + name + "' must be a string");
        out = it->get<std::string>();
    }
}

} // namespace

std::string to_string(SpectrumNormalization n) {
    switch (n) {
    case SpectrumNormalization::none: return "none";
    case SpectrumNormalization::unitary: return "unitary";
    case SpectrumNormalization::block_area: return "block_area";
    }
    return "none";
}

SpectrumNormalization parse_normalization(std::string_view name) {
    if (name == "none") return SpectrumNormalization::none;
    if (name == "unitary") return SpectrumNormalization::unitary;
    if (name == "block_area") return SpectrumNormalization::block_area;
    throw InvalidArgument("unknown normalization '" + std::string(name) +
                          "' (expected none, unitary or block_area)");
}

std::size_t RunConfig::feature_length() const {
    return freqnet::feature_length(slicing_levels, image_side, pooling.size);
}

void validate(const RunConfig& cfg) {
    try {
        if (cfg.image_side < 4 || cfg.image_side % 2 != 0) {
            throw ConfigError("image_side must be even and >= 4, got " + std::to_string(cfg.image_side));
        }
        validate_slicing(cfg.image_side, cfg.slicing_levels);
        (void)freqnet::feature_length(cfg.slicing_levels, cfg.image_side, cfg.pooling.size);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (!std::isfinite(cfg.filter_init.center) || !std::isfinite(cfg.filter_init.epsilon) ||
        cfg.filter_init.epsilon < 0.0) {
        throw ConfigError("filter_init.epsilon must be finite and >= 0");
    }
    for (std::size_t h : cfg.mlp.hidden) {
        if (h == 0) throw ConfigError("mlp.hidden sizes must be positive");
    }
    if (!(cfg.mlp.alpha >= 0.0) || !std::isfinite(cfg.mlp.alpha)) throw ConfigError("mlp.alpha must be >= 0");
    const auto& t = cfg.train;
    if (!(t.learning_rate > 0.0) || !std::isfinite(t.learning_rate)) throw ConfigError("train.lr must be > 0");
    if (!(t.lr_decay >= 0.0) || !std::isfinite(t.lr_decay)) throw ConfigError("train.lr_decay must be >= 0");
    if (!(t.momentum >= 0.0 && t.momentum < 1.0)) throw ConfigError("train.momentum must lie in [0, 1)");
    if (t.batch_size == 0) throw ConfigError("train.batch_size must be positive");
    if (!(t.split_fraction > 0.0 && t.split_fraction < 1.0)) {
        throw ConfigError("train.split_fraction must lie in (0, 1)");
    }
}

json to_json(const RunConfig& cfg) {
    return json{
        {"image_side", cfg.image_side},
        {"slicing_levels", cfg.slicing_levels},
        {"pooling", {{"size", cfg.pooling.size}, {"metric", to_string(cfg.pooling.metric)}}},
        {"features", {{"normalization", to_string(cfg.features.normalization)}}},
        {"filter_init", {{"center", cfg.filter_init.center}, {"epsilon", cfg.filter_init.epsilon}}},
        {"mlp",
         {{"hidden", cfg.mlp.hidden}, {"activation", to_string(cfg.mlp.activation)}, {"alpha", cfg.mlp.alpha}}},
        {"train",
         {{"lr", cfg.train.learning_rate},
          {"lr_decay", cfg.train.lr_decay},
          {"momentum", cfg.train.momentum},
          {"batch_size", cfg.train.batch_size},
          {"epochs", cfg.train.epochs},
          {"seed", cfg.train.seed},
          {"split_fraction", cfg.train.split_fraction}}},
    };
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    reject_unknown(j, {"image_side", "slicing_levels", "pooling", "features", "filter_init", "mlp", "train"}, "");
    read(j, "", "image_side", cfg.image_side);
    read(j, "", "slicing_levels", cfg.slicing_levels);

    if (auto it = j.find("pooling"); it != j.end()) {
        reject_unknown(*it, {"size", "metric"}, "pooling");
        read(*it, "pooling", "size", cfg.pooling.size);
        std::string metric = to_string(cfg.pooling.metric);
        read(*it, "pooling", "metric", metric);
        try {
            cfg.pooling.metric = parse_metric(metric);
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("pooling.metric: ") + e.what());
        }
    }
    if (auto it = j.find("features"); it != j.end()) {
        reject_unknown(*it, {"normalization"}, "features");
        std::string norm = to_string(cfg.features.normalization);
        read(*it, "features", "normalization", norm);
        try {
            cfg.features.normalization = parse_normalization(norm);
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("features.normalization: ") + e.what());
        }
    }
    if (auto it = j.find("filter_init"); it != j.end()) {
        reject_unknown(*it, {"center", "epsilon"}, "filter_init");
        read(*it, "filter_init", "center", cfg.filter_init.center);
        read(*it, "filter_init", "epsilon", cfg.filter_init.epsilon);
    }
    if (auto it = j.find("mlp"); it != j.end()) {
        reject_unknown(*it, {"hidden", "activation", "alpha"}, "mlp");
        if (auto h = it->find("hidden"); h != it->end()) {
            if (!h->is_array()) throw ConfigError("'mlp.hidden' must be an array of positive integers");
            cfg.mlp.hidden.clear();
            for (const auto& v : *h) {
                if (!v.is_number_unsigned()) throw ConfigError("'mlp.hidden' must be an array of positive integers");
                cfg.mlp.hidden.push_back(v.get<std::size_t>());
            }
        }
        std::string act = to_string(cfg.mlp.activation);
        read(*it, "mlp", "activation", act);
        try {
            cfg.mlp.activation = parse_activation(act);
        } catch (const InvalidArgument& e) {
            throw ConfigError(std::string("mlp.activation: ") + e.what());
        }
        read(*it, "mlp", "alpha", cfg.mlp.alpha);
    }
    if (auto it = j.find("train"); it != j.end()) {
        reject_unknown(*it, {"lr", "lr_decay", "momentum", "batch_size", "epochs", "seed", "split_fraction"},
                       "train");
        read(*it, "train", "lr", cfg.train.learning_rate);
        read(*it, "train", "lr_decay", cfg.train.lr_decay);
        read(*it, "train", "momentum", cfg.train.momentum);
        read(*it, "train", "batch_size", cfg.train.batch_size);
        read(*it, "train", "epochs", cfg.train.epochs);
        read(*it, "train", "seed", cfg.train.seed);
        read(*it, "train", "split_fraction", cfg.train.split_fraction);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

} // namespace freqnet
