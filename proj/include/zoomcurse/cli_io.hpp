#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zoomcurse/sim_harness.hpp"

namespace zoomcurse {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaId = "zoomcurse/v1";

struct ScoreTable {
  std::vector<std::string> labels;
  std::vector<double> x;
  std::vector<double> sigma;  // empty when the column is absent

  std::size_t size() const { return x.size(); }
  bool has_sigma() const { return !sigma.empty(); }
};

// CSV with header label,score[,sigma].
ScoreTable parse_score_table(std::istream& in, const std::string& source = "<input>");
ScoreTable read_score_table(const std::filesystem::path& path);

// key = value lines; '#' starts a comment.
SimConfig parse_sim_config(std::istream& in, const std::string& source = "<config>");
SimConfig read_sim_config(const std::filesystem::path& path);

struct OutputEnvelope {
  std::string mode;
  double alpha = 0.1;
  std::string method;
  std::string bound;  // union | exact_mc | none
  std::string tail;
  std::string noise;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> mc_samples;
  std::optional<std::size_t> winner_index;
  std::string winner_label;
  std::optional<double> winner_score;
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  std::map<std::string, double> diagnostics;
  std::string version = kToolVersion;
};

nlohmann::ordered_json envelope_to_json(const OutputEnvelope& env);
OutputEnvelope envelope_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json report_to_json(const SimReport& report);
std::string report_to_csv(const SimReport& report);

// Exit codes: 0 ok, 2 input or domain error, 3 infeasible level, 4 internal.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zoomcurse
