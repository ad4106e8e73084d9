#include "resmgcn/checkpoint.hpp"

#include "resmgcn/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace resmgcn {

using nlohmann::json;

namespace {

json matrix_to_json(const DenseMatrix<double>& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"values", m.values()}};
}

DenseMatrix<double> matrix_from_json(const json& j) {
    return DenseMatrix<double>(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                               j.at("values").get<std::vector<double>>());
}

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::Relu: return "relu";
        case Activation::Sigmoid: return "sigmoid";
    }
    return "relu";
}

Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::Identity;
    if (name == "relu") return Activation::Relu;
    if (name == "sigmoid") return Activation::Sigmoid;
    throw ConfigError("unknown activation: " + name);
}

} // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write: " + tmp);
        out << content;
        if (!out) throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + tmp + " -> " + path + " (" + ec.message() + ")");
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
    json j;
    j["format"] = "resmgcn-checkpoint";
    j["version"] = ckpt.version;
    j["arch"] = arch_name(ckpt.arch);
    j["activation"] = activation_name(ckpt.activation);
    j["first_layer_halve"] = ckpt.first_layer_halve;
    j["float_mode"] = float_mode_name(ckpt.float_mode);
    j["hidden"] = ckpt.hidden;
    j["num_layers"] = ckpt.num_layers;
    j["n"] = ckpt.n;
    j["split_seed"] = ckpt.split_seed;
    j["init_seed"] = ckpt.init_seed;
    j["dataset_hash"] = ckpt.dataset_hash;
    j["bipartite_negatives"] = ckpt.bipartite_negatives;
    j["epochs_trained"] = ckpt.epochs_trained;
    j["best_epoch"] = ckpt.best_epoch;
    j["best_val_auprc"] = ckpt.best_val_auprc;
    j["raw_ids"] = ckpt.raw_ids;
    j["layers"] = json::array();
    for (const auto& w : ckpt.layer_weights) {
        j["layers"].push_back(matrix_to_json(w));
    }
    j["predictor"] = {{"weight", matrix_to_json(ckpt.predictor_weight)},
                      {"bias", ckpt.predictor_bias}};
    write_file_atomic(path, j.dump());
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DataError("checkpoint is not valid JSON: " + path + " (" + e.what() + ")");
    }
    if (j.value("format", "") != "resmgcn-checkpoint") {
        throw DataError("not a checkpoint file: " + path);
    }
    Checkpoint ckpt;
    ckpt.version = j.at("version").get<int>();
    if (ckpt.version > Checkpoint::current_version) {
        throw DataError("checkpoint version " + std::to_string(ckpt.version) +
                        " is newer than supported " + std::to_string(Checkpoint::current_version));
    }
    ckpt.arch = arch_from_name(j.at("arch").get<std::string>());
    ckpt.activation = activation_from_name(j.at("activation").get<std::string>());
    ckpt.first_layer_halve = j.at("first_layer_halve").get<bool>();
    ckpt.float_mode =
        j.at("float_mode").get<std::string>() == "f32" ? FloatMode::F32 : FloatMode::F64;
    ckpt.hidden = j.at("hidden").get<std::size_t>();
    ckpt.num_layers = j.at("num_layers").get<std::size_t>();
    ckpt.n = j.at("n").get<std::size_t>();
    ckpt.split_seed = j.at("split_seed").get<std::uint64_t>();
    ckpt.init_seed = j.at("init_seed").get<std::uint64_t>();
    ckpt.dataset_hash = j.value("dataset_hash", "");
    ckpt.bipartite_negatives = j.at("bipartite_negatives").get<bool>();
    ckpt.epochs_trained = j.at("epochs_trained").get<std::size_t>();
    ckpt.best_epoch = j.at("best_epoch").get<std::size_t>();
    ckpt.best_val_auprc = j.at("best_val_auprc").get<double>();
    ckpt.raw_ids = j.at("raw_ids").get<std::vector<std::int64_t>>();
    for (const auto& layer : j.at("layers")) {
        ckpt.layer_weights.push_back(matrix_from_json(layer));
    }
    ckpt.predictor_weight = matrix_from_json(j.at("predictor").at("weight"));
    ckpt.predictor_bias = j.at("predictor").at("bias").get<double>();
    return ckpt;
}

} // namespace resmgcn
