#include "epodetect/model_io.hpp"

#include <json.hpp>

#include "epodetect/error.hpp"

namespace epodetect {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kFormatName = "epodetect-model";

Json kernel_to_json(const KernelSpec& spec) {
  Json j;
  if (const auto* rbf = std::get_if<RbfKernel>(&spec)) {
    j["type"] = "rbf";
    j["gamma"] = rbf->gamma;
  } else if (const auto* poly = std::get_if<PolynomialKernel>(&spec)) {
    j["type"] = "polynomial";
    j["degree"] = poly->degree;
    j["coef0"] = poly->coef0;
  } else {
    j["type"] = "linear";
  }
  return j;
}

KernelSpec kernel_from_json(const Json& j) {
  const auto type = j.at("type").get<std::string>();
  KernelSpec spec;
  if (type == "rbf") {
    spec = RbfKernel{j.at("gamma").get<double>()};
  } else if (type == "polynomial") {
    spec = PolynomialKernel{j.at("degree").get<int>(), j.at("coef0").get<double>()};
  } else if (type == "linear") {
    spec = LinearKernel{};
  } else {
    throw ParseError(0, "unknown kernel type '" + type + "'");
  }
  validate(spec);
  return spec;
}

Json trees_to_json(const std::vector<DecisionTree>& trees) {
  Json arr = Json::array();
  for (const DecisionTree& tree : trees) {
    Json nodes = Json::array();
    for (const TreeNode& n : tree.nodes()) {
      nodes.push_back(Json::array({n.feature, n.threshold, n.left, n.right, n.value}));
    }
    arr.push_back(std::move(nodes));
  }
  return arr;
}

std::vector<DecisionTree> trees_from_json(const Json& arr) {
  std::vector<DecisionTree> trees;
  for (const Json& nodes : arr) {
    std::vector<TreeNode> out;
    for (const Json& n : nodes) {
      if (!n.is_array() || n.size() != 5) throw ParseError(0, "tree node must have 5 fields");
      out.push_back(TreeNode{n[0].get<int>(), n[1].get<double>(), n[2].get<int>(),
                             n[3].get<int>(), n[4].get<double>()});
    }
    trees.emplace_back(std::move(out));
  }
  return trees;
}

Json to_json(const SvcModel& m) {
  Json j;
  j["hyperparameters"] = {{"c", m.c}, {"kernel", kernel_to_json(m.kernel)}};
  j["n_features"] = m.n_features;
  j["converged"] = m.converged;
  j["iterations"] = m.iterations;
  j["bias"] = m.bias;
  j["dual_coefs"] = m.dual_coefs;
  j["support_vectors"] = m.support_vectors;
  return j;
}

Json to_json(const ForestModel& m) {
  Json j;
  const ForestParams& p = m.params;
  j["hyperparameters"] = {{"n_trees", p.n_trees},         {"max_depth", p.max_depth},
                          {"min_leaf", p.min_leaf},       {"max_features", p.max_features},
                          {"positive_weight", p.positive_weight}};
  j["seed"] = m.seed;
  j["n_features"] = m.n_features;
  j["resolved_max_features"] = m.max_features;
  j["trees"] = trees_to_json(m.trees);
  return j;
}

Json to_json(const BoostedModel& m) {
  Json j;
  const BoostedParams& p = m.params;
  j["hyperparameters"] = {{"n_rounds", p.n_rounds},   {"learning_rate", p.learning_rate},
                          {"lambda", p.lambda},       {"gamma", p.gamma},
                          {"max_depth", p.max_depth}, {"min_leaf", p.min_leaf},
                          {"subsample", p.subsample}, {"positive_weight", p.positive_weight}};
  j["seed"] = m.seed;
  j["n_features"] = m.n_features;
  j["base_margin"] = m.base_margin;
  j["trees"] = trees_to_json(m.trees);
  return j;
}

}  // namespace

std::string model_to_json(const Model& model) {
  Json j;
  j["format"] = kFormatName;
  j["version"] = kModelFormatVersion;
  j["kind"] = std::string(to_string(kind_of(model)));
  Json body = std::visit([](const auto& m) { return to_json(m); }, model);
  for (auto& [key, value] : body.items()) j[key] = value;
  return j.dump(1) + "\n";
}

Model model_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("model JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormatName) {
      throw ParseError(0, "not an epodetect model document");
    }
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw ParseError(0, "unsupported model format version " + j.at("version").dump());
    }
    const auto kind = j.at("kind").get<std::string>();
    const Json& hp = j.at("hyperparameters");
    if (kind == "svc") {
      SvcModel m;
      m.c = hp.at("c").get<double>();
      m.kernel = kernel_from_json(hp.at("kernel"));
      m.n_features = j.at("n_features").get<std::size_t>();
      m.converged = j.at("converged").get<bool>();
      m.iterations = j.at("iterations").get<std::size_t>();
      m.bias = j.at("bias").get<double>();
      m.dual_coefs = j.at("dual_coefs").get<std::vector<double>>();
      m.support_vectors = j.at("support_vectors").get<std::vector<double>>();
      if (m.support_vectors.size() != m.dual_coefs.size() * m.n_features) {
        throw ParseError(0, "support vector block has the wrong size");
      }
      return m;
    }
    if (kind == "rf") {
      ForestModel m;
      m.params.n_trees = hp.at("n_trees").get<std::size_t>();
      m.params.max_depth = hp.at("max_depth").get<std::size_t>();
      m.params.min_leaf = hp.at("min_leaf").get<std::size_t>();
      m.params.max_features = hp.at("max_features").get<std::size_t>();
      m.params.positive_weight = hp.at("positive_weight").get<double>();
      m.seed = j.at("seed").get<std::uint64_t>();
      m.n_features = j.at("n_features").get<std::size_t>();
      m.max_features = j.at("resolved_max_features").get<std::size_t>();
      m.trees = trees_from_json(j.at("trees"));
      if (m.trees.empty()) throw ParseError(0, "forest has no trees");
      return m;
    }
    if (kind == "boost") {
      BoostedModel m;
      m.params.n_rounds = hp.at("n_rounds").get<std::size_t>();
      m.params.learning_rate = hp.at("learning_rate").get<double>();
      m.params.lambda = hp.at("lambda").get<double>();
      m.params.gamma = hp.at("gamma").get<double>();
      m.params.max_depth = hp.at("max_depth").get<std::size_t>();
      m.params.min_leaf = hp.at("min_leaf").get<std::size_t>();
      m.params.subsample = hp.at("subsample").get<double>();
      m.params.positive_weight = hp.at("positive_weight").get<double>();
      m.seed = j.at("seed").get<std::uint64_t>();
      m.n_features = j.at("n_features").get<std::size_t>();
      m.base_margin = j.at("base_margin").get<double>();
      m.trees = trees_from_json(j.at("trees"));
      return m;
    }
    throw ParseError(0, "unknown model kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("model JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(0, std::string("model JSON: ") + e.what());
  }
}

}  // namespace epodetect
