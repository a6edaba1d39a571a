#include "alteach/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace alteach {

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
  throw Error(source + ": field '" + field + "': " + what);
}

}  // namespace

std::string problem_to_text(const TeachingProblem& problem) {
  std::ostringstream out;
  out << "{\n  \"labels\": [\n";
  const auto& labels = problem.labels();
  for (Eigen::Index h = 0; h < labels.rows(); ++h) {
    out << "    [";
    for (Eigen::Index x = 0; x < labels.cols(); ++x) {
      out << (x ? "," : "") << static_cast<int>(labels(h, x));
    }
    out << "]" << (h + 1 < labels.rows() ? "," : "") << "\n";
  }
  out << "  ],\n  \"target\": " << problem.target();
  if (problem.has_features()) {
    const auto& f = problem.features();
    out << ",\n  \"features\": [\n";
    for (Eigen::Index x = 0; x < f.rows(); ++x) {
      Json row = Json::array();
      for (Eigen::Index d = 0; d < f.cols(); ++d) row.push_back(f(x, d));
      out << "    " << row.dump() << (x + 1 < f.rows() ? "," : "") << "\n";
    }
    out << "  ]";
  }
  if (!problem.names().empty()) {
    out << ",\n  \"names\": " << Json(problem.names()).dump();
  }
  out << "\n}\n";
  return out.str();
}

TeachingProblem problem_from_text(std::string_view text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(source + ": " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON (" +
                e.what() + ")");
  }
  if (!doc.is_object()) throw Error(source + ": top-level value must be an object");

  if (!doc.contains("labels")) field_error(source, "labels", "missing");
  const Json& rows = doc["labels"];
  if (!rows.is_array() || rows.empty()) field_error(source, "labels", "must be a non-empty array of arrays");
  if (!rows[0].is_array() || rows[0].empty()) field_error(source, "labels[0]", "must be a non-empty array");
  const std::size_t n_h = rows.size();
  const std::size_t n_x = rows[0].size();
  LabelMatrix labels(static_cast<Eigen::Index>(n_h), static_cast<Eigen::Index>(n_x));
  for (std::size_t h = 0; h < n_h; ++h) {
    const std::string path = "labels[" + std::to_string(h) + "]";
    if (!rows[h].is_array()) field_error(source, path, "must be an array");
    if (rows[h].size() != n_x) {
      field_error(source, path, "has " + std::to_string(rows[h].size()) + " entries, expected " + std::to_string(n_x));
    }
    for (std::size_t x = 0; x < n_x; ++x) {
      const Json& v = rows[h][x];
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
        field_error(source, path + "[" + std::to_string(x) + "]", "must be +1 or -1, got " + v.dump());
      }
      labels(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(x)) = static_cast<std::int8_t>(v.get<int>());
    }
  }

  if (!doc.contains("target")) field_error(source, "target", "missing");
  const Json& t = doc["target"];
  if (!t.is_number_integer() || t.get<long long>() < 0) field_error(source, "target", "must be a non-negative integer");
  const auto target = static_cast<Index>(t.get<long long>());
  if (target >= n_h) field_error(source, "target", "index " + std::to_string(target) + " >= hypothesis count");

  std::optional<FeatureMatrix> features;
  if (doc.contains("features") && !doc["features"].is_null()) {
    const Json& f = doc["features"];
    if (!f.is_array() || f.size() != n_x) {
      field_error(source, "features", "must hold one vector per instance (" + std::to_string(n_x) + ")");
    }
    const std::size_t dim = f[0].is_array() ? f[0].size() : 0;
    if (dim == 0) field_error(source, "features[0]", "must be a non-empty array of numbers");
    FeatureMatrix fm(static_cast<Eigen::Index>(n_x), static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < n_x; ++x) {
      const std::string path = "features[" + std::to_string(x) + "]";
      if (!f[x].is_array() || f[x].size() != dim) {
        field_error(source, path, "must have dimension " + std::to_string(dim));
      }
      for (std::size_t d = 0; d < dim; ++d) {
        if (!f[x][d].is_number()) field_error(source, path + "[" + std::to_string(d) + "]", "must be a number");
        fm(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(d)) = f[x][d].get<double>();
      }
    }
    features = std::move(fm);
  }

  std::vector<std::string> names;
  if (doc.contains("names") && !doc["names"].is_null()) {
    const Json& nm = doc["names"];
    if (!nm.is_array() || nm.size() != n_x) field_error(source, "names", "must hold one string per instance");
    for (const auto& s : nm) {
      if (!s.is_string()) field_error(source, "names", "entries must be strings");
      names.push_back(s.get<std::string>());
    }
  }

  TeachingProblem problem(std::move(labels), target, std::move(features), std::move(names));
  if (auto dup = preflight_teachable(problem)) {
    field_error(source, "labels", "rows " + std::to_string(dup->first) + " and " + std::to_string(dup->second) +
                                      " are identical");
  }
  return problem;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

void save_problem(const std::filesystem::path& path, const TeachingProblem& problem) {
  write_file(path, problem_to_text(problem));
}

TeachingProblem load_problem(const std::filesystem::path& path) {
  return problem_from_text(read_file(path), path.string());
}

namespace {

Json example_json(const Example& e) { return {{"instance", e.instance}, {"label", e.label}}; }

Example example_from(const Json& j) { return {j.at("instance").get<Index>(), j.at("label").get<int>()}; }

}  // namespace

Json to_json(const Transcript& transcript) {
  Json rounds = Json::array();
  for (const auto& r : transcript.rounds) {
    rounds.push_back({{"t", r.t},
                      {"query", example_json(r.query)},
                      {"contrastive", r.contrastive ? example_json(*r.contrastive) : Json(nullptr)},
                      {"vs_size_after", r.vs_size_after},
                      {"best_unconstrained_gain", r.best_unconstrained_gain},
                      {"best_constrained_gain", r.best_constrained_gain}});
  }
  return {{"rounds", rounds}, {"terminated", transcript.terminated}, {"total_examples", transcript.total_examples}};
}

Transcript transcript_from_json(const Json& doc) {
  Transcript tr;
  for (const auto& r : doc.at("rounds")) {
    Round round;
    round.t = r.at("t").get<std::size_t>();
    round.query = example_from(r.at("query"));
    if (!r.at("contrastive").is_null()) round.contrastive = example_from(r.at("contrastive"));
    round.vs_size_after = r.at("vs_size_after").get<std::size_t>();
    round.best_unconstrained_gain = r.at("best_unconstrained_gain").get<std::size_t>();
    round.best_constrained_gain = r.at("best_constrained_gain").get<std::size_t>();
    tr.rounds.push_back(round);
  }
  tr.terminated = doc.at("terminated").get<bool>();
  tr.total_examples = doc.at("total_examples").get<std::size_t>();
  return tr;
}

Json to_json(const LearnerSpec& learner) {
  return {{"kind", to_string(learner.kind)}, {"beta", learner.beta}, {"seed", learner.seed}};
}

LearnerSpec learner_from_json(const Json& doc) {
  LearnerSpec spec;
  spec.kind = learner_kind_from_string(doc.value("kind", std::string("gbs")));
  spec.beta = doc.value("beta", 1.0);
  spec.seed = doc.value("seed", std::uint64_t{0});
  spec.validate();
  return spec;
}

Json to_json(const ConstraintSpec& c) {
  return {{"kind", to_string(c.kind)}, {"psi", c.psi}, {"radius", c.radius}};
}

ConstraintSpec constraint_from_json(const Json& doc) {
  ConstraintSpec spec;
  spec.kind = constraint_kind_from_string(doc.value("kind", std::string("none")));
  spec.psi = doc.value("psi", 1.0);
  spec.radius = doc.value("radius", std::size_t{1});
  spec.validate();
  return spec;
}

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

template <typename T>
Json maybe(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const DiagnosticsReport& r) {
  Json j;
  j["alpha"] = number(r.alpha.value);
  j["alpha_infinite"] = r.alpha.infinite;
  j["rho_g"] = r.rho_gamma ? number(r.rho_gamma->rho_g) : Json(nullptr);
  j["gamma_g"] = r.rho_gamma ? number(r.rho_gamma->gamma_g) : Json(nullptr);
  j["rho_gamma_states"] = r.rho_gamma ? Json(r.rho_gamma->states) : Json(nullptr);
  j["rho_gamma_sampled"] = r.rho_gamma ? Json(r.rho_gamma->sampled) : Json(nullptr);
  j["c_star"] = r.c_star;
  j["c_star_tolerance"] = r.c_star_tolerance;
  j["k_min"] = r.k_min;
  j["opt_t"] = maybe(r.opt_t);
  j["opt_t_al"] = maybe(r.opt_t_al);
  j["greedy_cost"] = r.greedy_cost;
  if (r.thm1) {
    j["bound_thm1"] = {{"value", number(r.thm1->value)}, {"term1", number(r.thm1->term1)},
                       {"term2", number(r.thm1->term2)}};
  } else {
    j["bound_thm1"] = nullptr;
  }
  if (r.thm3) {
    j["bound_thm3"] = {{"value", number(r.thm3->value)},
                       {"epsilon", number(r.thm3->epsilon)},
                       {"alpha_cap", number(r.thm3->alpha_cap)},
                       {"degenerate", r.thm3->degenerate}};
  } else {
    j["bound_thm3"] = nullptr;
  }
  j["bound_gbs_alone"] = number(r.bound_gbs_alone);
  j["bounds_are_indicative"] = true;
  j["depth_capped"] = r.depth_capped;
  return j;
}

}  // namespace alteach
