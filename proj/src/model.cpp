#include "freqnet/model.hpp"

#include <cmath>
#include <fstream>

#include "freqnet/errors.hpp"
#include "freqnet/random.hpp"

namespace freqnet {

using nlohmann::json;

namespace {

constexpr std::uint64_t kFilterStream = 1;
constexpr std::uint64_t kHeadStream = 2;

std::vector<std::size_t> head_sizes(const RunConfig& cfg, std::size_t classes) {
    std::vector<std::size_t> sizes{cfg.feature_length()};
    sizes.insert(sizes.end(), cfg.mlp.hidden.begin(), cfg.mlp.hidden.end());
    sizes.push_back(classes);
    return sizes;
}

std::vector<double> read_array(const json& j, std::size_t expected, const std::string& what) {
    if (!j.is_array()) throw CheckpointError("'" + what + "' must be an array");
    if (j.size() != expected) {
        throw CheckpointError("'" + what + "' has " + std::to_string(j.size()) + " values, expected " +
                              std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& v : j) {
        if (!v.is_number()) throw CheckpointError("'" + what + "' holds a non-numeric value");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw CheckpointError("'" + what + "' holds a non-finite value");
        out.push_back(d);
    }
    return out;
}

} // namespace

FreqNetModel init_model(const RunConfig& cfg, std::vector<std::string> class_names, std::uint64_t seed) {
    validate(cfg);
    if (class_names.size() < 2) throw InvalidArgument("a classifier needs at least 2 classes");
    FreqNetModel m;
    m.config = cfg;
    m.class_names = std::move(class_names);
    m.filters = init_filter_bank(ring_layout(cfg.slicing_levels, cfg.image_side, cfg.pooling.size),
                                 cfg.filter_init.center, cfg.filter_init.epsilon, derive_seed(seed, kFilterStream));
    m.mlp = init_xavier(head_sizes(cfg, m.class_names.size()), derive_seed(seed, kHeadStream), cfg.mlp.activation,
                        cfg.mlp.alpha);
    return m;
}

std::vector<double> predict_probabilities(const FreqNetModel& model, const RingSumVector& sums) {
    return forward(model.mlp, filter_forward(sums, model.filters)).probabilities;
}

json checkpoint_to_json(const FreqNetModel& model) {
    json weights = json::array();
    json biases = json::array();
    for (std::size_t l = 0; l < model.mlp.layer_count(); ++l) {
        weights.push_back(model.mlp.weights[l]);
        biases.push_back(model.mlp.biases[l]);
    }
    return json{
        {"format_version", kCheckpointFormatVersion},
        {"config", to_json(model.config)},
        {"class_names", model.class_names},
        {"filter_weights", model.filters.values},
        {"mlp", {{"layer_sizes", model.mlp.layer_sizes}, {"weights", weights}, {"biases", biases}}},
    };
}

FreqNetModel checkpoint_from_json(const json& j) {
    if (!j.is_object()) throw CheckpointError("checkpoint must be a JSON object");
    for (const char* key : {"format_version", "config", "class_names", "filter_weights", "mlp"}) {
        if (!j.contains(key)) throw CheckpointError(std::string("checkpoint is missing '") + key + "'");
    }
    if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != kCheckpointFormatVersion) {
        throw CheckpointError("unsupported checkpoint format_version " + j["format_version"].dump());
    }

    FreqNetModel m;
    try {
        m.config = config_from_json(j["config"]);
    } catch (const ConfigError& e) {
        throw CheckpointError(std::string("embedded config: ") + e.what());
    }

    const json& names = j["class_names"];
    if (!names.is_array() || names.size() < 2) throw CheckpointError("'class_names' must list >= 2 classes");
    for (const auto& n : names) {
        if (!n.is_string()) throw CheckpointError("'class_names' must hold strings");
        m.class_names.push_back(n.get<std::string>());
    }

    const auto layout = ring_layout(m.config.slicing_levels, m.config.image_side, m.config.pooling.size);
    m.filters.offsets = layout;
    m.filters.values = read_array(j["filter_weights"], layout.back(), "filter_weights");

    const json& mlp = j["mlp"];
    if (!mlp.is_object() || !mlp.contains("layer_sizes") || !mlp.contains("weights") || !mlp.contains("biases")) {
        throw CheckpointError("'mlp' must hold layer_sizes, weights and biases");
    }
    const auto expected = head_sizes(m.config, m.class_names.size());
    std::vector<std::size_t> sizes;
    try {
        sizes = mlp["layer_sizes"].get<std::vector<std::size_t>>();
    } catch (const json::exception&) {
        throw CheckpointError("'mlp.layer_sizes' must be an array of integers");
    }
    if (sizes != expected) throw CheckpointError("'mlp.layer_sizes' disagrees with the embedded config");
    m.mlp = MlpParams::zeros(sizes, m.config.mlp.activation, m.config.mlp.alpha);
    if (!mlp["weights"].is_array() || mlp["weights"].size() != m.mlp.layer_count() || !mlp["biases"].is_array() ||
        mlp["biases"].size() != m.mlp.layer_count()) {
        throw CheckpointError("'mlp' weights/biases must have one entry per layer");
    }
    for (std::size_t l = 0; l < m.mlp.layer_count(); ++l) {
        const std::string tag = "mlp layer " + std::to_string(l);
        m.mlp.weights[l] = read_array(mlp["weights"][l], sizes[l] * sizes[l + 1], tag + " weights");
        m.mlp.biases[l] = read_array(mlp["biases"][l], sizes[l + 1], tag + " biases");
    }
    return m;
}

void save_checkpoint(const FreqNetModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write checkpoint '" + path.string() + "'");
    out << checkpoint_to_json(model).dump(1) << '\n';
    if (!out) throw IoError("failed writing checkpoint '" + path.string() + "'");
}

FreqNetModel load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CheckpointError("checkpoint '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return checkpoint_from_json(j);
}

} // namespace freqnet
