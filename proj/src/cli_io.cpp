#include "zoomcurse/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "zoomcurse/error.hpp"
#include "zoomcurse/tail_bounds.hpp"
#include "zoomcurse/topk.hpp"
#include "zoomcurse/variance_adaptive.hpp"
#include "zoomcurse/winner_meta.hpp"
#include "zoomcurse/zoom_core.hpp"

namespace zoomcurse {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    if (!std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InputError(where + ": not a finite number: '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s, const std::string& where) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InputError(where + ": not a non-negative integer: '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw InputError(where + ": integer out of range: '" + s + "'");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json interval_json(const WinnerInterval& w) {
  return json{{"lower", w.t_l}, {"upper", w.t_u}, {"r_lower", w.r_l}, {"r_upper", w.r_u}, {"target", w.target}};
}

}  // namespace

ScoreTable parse_score_table(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!trim(line).empty()) {
      header = split(trim(line), ',');
      break;
    }
  }
  if (header.empty()) throw InputError(source + ": empty input");
  const bool sig = header.size() == 3 && header[2] == "sigma";
  if (!(header.size() >= 2 && header[0] == "label" && header[1] == "score" && (header.size() == 2 || sig)))
    throw InputError(source + ":" + std::to_string(lineno) + ": header must be label,score or label,score,sigma");

  ScoreTable t;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto cells = split(row, ',');
    const std::string where = source + ":" + std::to_string(lineno);
    if (cells.size() != header.size())
      throw InputError(where + ": expected " + std::to_string(header.size()) + " fields");
    if (cells[0].empty()) throw InputError(where + ": empty label");
    if (!seen.insert(cells[0]).second) throw InputError(where + ": duplicate label '" + cells[0] + "'");
    t.labels.push_back(cells[0]);
    t.x.push_back(to_double(cells[1], where));
    if (sig) {
      const double s = to_double(cells[2], where);
      if (!(s > 0.0)) throw InputError(where + ": sigma must be positive");
      t.sigma.push_back(s);
    }
  }
  if (t.x.empty()) throw InputError(source + ": no data rows");
  return t;
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_score_table(in, path.string());
}

SimConfig parse_sim_config(std::istream& in, const std::string& source) {
  SimConfig c;
  bool have_seed = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw InputError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "m") {
      c.m = to_u64(val, where);
    } else if (key == "m_winners" || key == "m_w") {
      c.m_winners = to_u64(val, where);
    } else if (key == "c") {
      c.c = to_double(val, where);
    } else if (key == "rho") {
      c.rho = to_double(val, where);
    } else if (key == "alpha") {
      c.alpha = to_double(val, where);
    } else if (key == "trials") {
      c.trials = to_u64(val, where);
    } else if (key == "seed") {
      c.seed = to_u64(val, where);
      have_seed = true;
    } else if (key == "methods") {
      c.methods.clear();
      for (const auto& name : split(val, ','))
        if (!name.empty()) c.methods.push_back(parse_sim_method(name));
    } else if (key == "topk_k") {
      c.topk_k = to_u64(val, where);
    } else if (key == "mc_samples") {
      c.mc_samples = to_u64(val, where);
    } else if (key == "grid_points") {
      c.grid_points = to_u64(val, where);
    } else if (key == "width_trials") {
      c.width_trials = to_u64(val, where);
    } else if (key == "workers") {
      c.workers = static_cast<unsigned>(to_u64(val, where));
    } else if (key == "keep_trials") {
      if (val != "true" && val != "false") throw InputError(where + ": keep_trials must be true or false");
      c.keep_trials = val == "true";
    } else {
      throw InputError(where + ": unknown key '" + key + "'");
    }
  }
  if (!have_seed) throw InputError(source + ": seed is required");
  return c;
}

SimConfig read_sim_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_sim_config(in, path.string());
}

json envelope_to_json(const OutputEnvelope& e) {
  json j;
  j["schema"] = kSchemaId;
  j["tool_version"] = e.version;
  j["mode"] = e.mode;
  j["alpha"] = e.alpha;
  j["method"] = e.method;
  j["bound"] = e.bound;
  j["tail"] = e.tail;
  j["noise"] = e.noise;
  j["seed"] = e.seed ? json(*e.seed) : json(nullptr);
  j["mc_samples"] = e.mc_samples ? json(*e.mc_samples) : json(nullptr);
  if (e.winner_index) {
    j["winner"] = json{{"index", *e.winner_index}, {"label", e.winner_label}, {"score", e.winner_score.value_or(0.0)}};
  } else {
    j["winner"] = nullptr;
  }
  j["result"] = e.result;
  json d = json::object();
  for (const auto& [k, v] : e.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  return j;
}

OutputEnvelope envelope_from_json(const json& j) {
  if (j.value("schema", "") != kSchemaId) throw InputError("not a zoomcurse/v1 document");
  OutputEnvelope e;
  e.version = j.at("tool_version").get<std::string>();
  e.mode = j.at("mode").get<std::string>();
  e.alpha = j.at("alpha").get<double>();
  e.method = j.at("method").get<std::string>();
  e.bound = j.at("bound").get<std::string>();
  e.tail = j.at("tail").get<std::string>();
  e.noise = j.at("noise").get<std::string>();
  if (!j.at("seed").is_null()) e.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("mc_samples").is_null()) e.mc_samples = j.at("mc_samples").get<std::size_t>();
  if (!j.at("winner").is_null()) {
    e.winner_index = j["winner"].at("index").get<std::size_t>();
    e.winner_label = j["winner"].at("label").get<std::string>();
    e.winner_score = j["winner"].at("score").get<double>();
  }
  e.result = j.at("result");
  for (const auto& [k, v] : j.at("diagnostics").items()) e.diagnostics[k] = v.get<double>();
  return e;
}

json report_to_json(const SimReport& r) {
  const auto& c = r.config;
  json cfg{{"m", c.m},           {"m_winners", c.m_winners},   {"c", c.c},
           {"rho", c.rho},       {"alpha", c.alpha},           {"trials", c.trials},
           {"seed", c.seed},     {"topk_k", c.topk_k},         {"mc_samples", c.mc_samples},
           {"grid_points", c.grid_points}, {"width_trials", c.width_trials}};
  json methods = json::array();
  for (const auto& s : r.methods) {
    json m{{"method", sim_method_name(s.method)},
           {"covered", s.covered},
           {"trials", s.trials},
           {"coverage", s.coverage},
           {"width", {{"median", s.width.median}, {"q05", s.width.q05}, {"q95", s.width.q95}}},
           {"width_short", {{"median", s.width_short.median}, {"q05", s.width_short.q05}, {"q95", s.width_short.q95}}}};
    if (c.keep_trials) {
      m["trial_widths"] = s.widths;
      json hits = json::array();
      for (char h : s.hits) hits.push_back(h != 0);
      m["trial_hits"] = hits;
    }
    methods.push_back(m);
  }
  const auto wc = width_comparison(r);
  json ratios = json::array();
  for (const auto& q : wc.ratios)
    ratios.push_back({{"numerator", sim_method_name(q.numerator)},
                      {"denominator", sim_method_name(q.denominator)},
                      {"ratio", std::isfinite(q.ratio) ? json(q.ratio) : json(nullptr)}});
  return json{{"config", cfg},
              {"r_sim", r.r_sim},
              {"k_used", r.k_used},
              {"methods", methods},
              {"width_ratios", ratios},
              {"checks",
               {{"zoom_above_bonferroni", r.zoom_above_bonferroni},
                {"grid_above_stepdown", r.grid_above_stepdown},
                {"stepdown_clamp_binding", r.stepdown_clamp_binding}}}};
}

std::string report_to_csv(const SimReport& r) {
  std::ostringstream os;
  const auto& c = r.config;
  os << "method,m,m_winners,c,rho,alpha,trials,covered,coverage,width_median,width_q05,width_q95,"
        "width_short_median,width_short_q05,width_short_q95\n";
  for (const auto& s : r.methods) {
    os << sim_method_name(s.method) << ',' << c.m << ',' << c.m_winners << ',' << fmt(c.c) << ',' << fmt(c.rho) << ','
       << fmt(c.alpha) << ',' << c.trials << ',' << s.covered << ',' << fmt(s.coverage) << ',' << fmt(s.width.median)
       << ',' << fmt(s.width.q05) << ',' << fmt(s.width.q95) << ',' << fmt(s.width_short.median) << ','
       << fmt(s.width_short.q05) << ',' << fmt(s.width_short.q95) << '\n';
  }
  return os.str();
}

namespace {

struct CommonArgs {
  std::string input;
  double alpha = 0.1;
  std::string tail = "gaussian:1";
  std::string method = "grid";
  std::size_t grid_points = 2001;
  std::size_t mc_samples = 100000;
  std::optional<std::uint64_t> seed;
  std::string noise;
  std::string out = "json";
  unsigned workers = 1;
  CLI::Option* tail_opt = nullptr;
};

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--input", a.input, "CSV with header label,score[,sigma]")->required();
  sub->add_option("--alpha", a.alpha, "Miscoverage level in (0,1)")->capture_default_str();
  a.tail_opt = sub->add_option("--tail", a.tail, "gaussian:<scale> | subgaussian:<proxy> | empirical:<csv>")
                   ->capture_default_str();
  sub->add_option("--method", a.method, "grid | root | stepdown")
      ->check(CLI::IsMember({"grid", "root", "stepdown"}))
      ->capture_default_str();
  sub->add_option("--grid-points", a.grid_points, "Grid size")->capture_default_str();
  sub->add_option("--mc-samples", a.mc_samples, "Monte-Carlo bank size")->capture_default_str();
  sub->add_option("--seed", a.seed, "Seed for the Monte-Carlo bank");
  sub->add_option("--noise", a.noise, "equicorrelated:<rho> | independent | table:<csv>");
  sub->add_option("--out", a.out, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--workers", a.workers, "Threads for bank generation")->capture_default_str();
}

Method to_method(const std::string& s) {
  if (s == "root") return Method::root;
  if (s == "stepdown") return Method::stepdown;
  return Method::grid;
}

struct Built {
  ScoreTable table;
  std::optional<Problem> problem;
  OutputEnvelope env;
};

Built build(const CommonArgs& a, const std::string& mode) {
  Built b;
  b.table = read_score_table(a.input);
  const std::size_t m = b.table.size();
  b.env.mode = mode;
  b.env.alpha = a.alpha;
  b.env.method = a.method;
  b.env.seed = a.seed;
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw DomainError("--alpha must lie in (0, 1)");

  std::optional<JointBound> bound;
  if (!a.noise.empty()) {
    if (!a.seed) throw InputError("--seed is required with --noise");
    if (a.tail_opt && a.tail_opt->count() > 0) throw InputError("--tail and --noise are mutually exclusive");
    std::optional<NoiseSampler> sampler;
    std::optional<TailModel> envelope;
    if (a.noise == "independent") {
      sampler = NoiseSampler::equicorrelated(m, 0.0);
      envelope = TailModel::gaussian(1.0);
    } else if (a.noise.rfind("equicorrelated:", 0) == 0) {
      const double rho = to_double(a.noise.substr(15), "--noise");
      if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("equicorrelated rho must lie in [0, 1)");
      sampler = NoiseSampler::equicorrelated(m, rho);
      envelope = TailModel::gaussian(1.0);
    } else if (a.noise.rfind("table:", 0) == 0) {
      sampler = NoiseSampler::table_from_csv(a.noise.substr(6));
      if (sampler->dimension() != m) throw InputError("noise table has a different number of columns than --input rows");
    } else {
      throw InputError("unknown --noise '" + a.noise + "'");
    }
    bound = JointBound::exact_mc(*sampler, a.mc_samples, *a.seed, envelope, std::max(1u, a.workers));
    b.env.bound = "exact_mc";
    b.env.noise = a.noise;
    b.env.tail = envelope ? envelope->describe() : "";
    b.env.mc_samples = a.mc_samples;
  } else {
    bound = JointBound::union_of(TailModel::parse(a.tail), m);
    b.env.bound = "union";
    b.env.tail = a.tail;
  }
  b.problem.emplace(b.table.x, *bound, a.alpha, b.table.labels);
  const std::size_t w = b.problem->winner();
  b.env.winner_index = w;
  b.env.winner_label = b.table.labels[w];
  b.env.winner_score = b.table.x[w];
  return b;
}

void emit(std::ostream& out, const OutputEnvelope& env, const std::string& format, const std::string& csv) {
  if (format == "csv")
    out << csv;
  else
    out << envelope_to_json(env).dump(2) << '\n';
}

void reject_sigma(const Built& b, const std::string& what) {
  if (b.table.has_sigma()) throw UnsupportedMethodError(what + " is not defined for inputs with a sigma column");
}

int cmd_winner(const CommonArgs& a, bool population, std::ostream& out) {
  Built b = build(a, population ? "population-ci" : "winner-ci");
  WinnerInterval w;
  GridOptions g;
  g.points = a.grid_points;
  if (b.table.has_sigma()) {
    if (a.method != "grid") throw UnsupportedMethodError("inputs with sigma support only --method grid");
    if (population) throw UnsupportedMethodError("population interval is not defined for inputs with sigma");
    ScaledGridOptions so;
    so.points = a.grid_points;
    w = winner_interval_scaled(ScaledProblem(*b.problem, b.table.sigma), so);
    b.env.method = "grid_scaled";
  } else if (population) {
    w = population_value_interval(*b.problem, to_method(a.method), g);
  } else {
    w = winner_interval(*b.problem, to_method(a.method), g);
  }
  b.env.result = json{{"interval", interval_json(w)}};
  b.env.diagnostics = w.diagnostics;
  std::ostringstream csv;
  csv << "mode,label,index,score,lower,upper\n"
      << b.env.mode << ',' << b.env.winner_label << ',' << w.winner << ',' << fmt(w.x_winner) << ',' << fmt(w.t_l)
      << ',' << fmt(w.t_u) << '\n';
  emit(out, b.env, a.out, csv.str());
  return 0;
}

int cmd_topk(const CommonArgs& a, std::size_t k, std::ostream& out) {
  Built b = build(a, "topk-ci");
  reject_sigma(b, "top-k inference");
  if (a.method == "root") throw UnsupportedMethodError("top-k supports --method grid or stepdown");
  if (k < 1 || k > b.table.size()) throw DomainError("--k must lie in [1, number of rows]");
  json winners = json::array();
  double r = 0.0;
  std::vector<std::size_t> idx;
  if (a.method == "stepdown") {
    r = topk_stepdown(*b.problem, k);
    idx = top_k_indices(b.table.x, k);
  } else {
    GridOptions g;
    g.points = a.grid_points;
    const auto res = topk_interval(*b.problem, k, g);
    r = res.r_max;
    idx = res.winner_indices;
    b.env.diagnostics = res.diagnostics;
  }
  std::ostringstream csv;
  csv << "label,index,score,lower,upper\n";
  for (auto j : idx) {
    winners.push_back(json{{"index", j},
                           {"label", b.table.labels[j]},
                           {"score", b.table.x[j]},
                           {"lower", b.table.x[j] - r},
                           {"upper", b.table.x[j] + r}});
    csv << b.table.labels[j] << ',' << j << ',' << fmt(b.table.x[j]) << ',' << fmt(b.table.x[j] - r) << ','
        << fmt(b.table.x[j] + r) << '\n';
  }
  b.env.result = json{{"k", k}, {"r_max", r}, {"winners", winners}};
  emit(out, b.env, a.out, csv.str());
  return 0;
}

int cmd_identity(const CommonArgs& a, std::ostream& out) {
  Built b = build(a, "identity-set");
  reject_sigma(b, "the identity set");
  GridOptions g;
  g.points = a.grid_points;
  const auto w = winner_interval(*b.problem, to_method(a.method), g);
  const auto ids = winner_identity_set(*b.problem, w);
  json members = json::array();
  std::ostringstream csv;
  csv << "label,index,score,member\n";
  for (std::size_t i = 0; i < b.table.size(); ++i) {
    const bool in = std::binary_search(ids.indices.begin(), ids.indices.end(), i);
    if (in) members.push_back(json{{"index", i}, {"label", b.table.labels[i]}, {"score", b.table.x[i]}});
    csv << b.table.labels[i] << ',' << i << ',' << fmt(b.table.x[i]) << ',' << (in ? 1 : 0) << '\n';
  }
  b.env.result = json{{"members", members}, {"threshold", ids.threshold}, {"radius", ids.radius}, {"interval", interval_json(w)}};
  b.env.diagnostics = w.diagnostics;
  emit(out, b.env, a.out, csv.str());
  return 0;
}

int cmd_near(const CommonArgs& a, std::optional<std::size_t> index, const std::string& label, std::ostream& out) {
  Built b = build(a, "near-winner");
  reject_sigma(b, "the near-winner set");
  std::size_t j = 0;
  if (index && !label.empty()) throw InputError("give either --index or --label");
  if (index) {
    j = *index;
    if (j >= b.table.size()) throw InputError("--index out of range");
  } else if (!label.empty()) {
    auto it = std::find(b.table.labels.begin(), b.table.labels.end(), label);
    if (it == b.table.labels.end()) throw InputError("unknown label '" + label + "'");
    j = static_cast<std::size_t>(it - b.table.labels.begin());
  } else {
    throw InputError("near-winner needs --index or --label");
  }
  GridOptions g;
  g.points = a.grid_points;
  const auto w = winner_interval(*b.problem, to_method(a.method), g);
  const auto nw = near_winner_interval(*b.problem, w, j);
  json pieces = json::array();
  std::ostringstream csv;
  csv << "piece,lower,upper\n";
  for (std::size_t i = 0; i < nw.pieces.size(); ++i) {
    pieces.push_back(json{{"lower", nw.pieces[i].first}, {"upper", nw.pieces[i].second}});
    csv << i << ',' << fmt(nw.pieces[i].first) << ',' << fmt(nw.pieces[i].second) << '\n';
  }
  csv << "hull," << fmt(nw.lo) << ',' << fmt(nw.hi) << '\n';
  b.env.result = json{{"index", j},
                      {"label", b.table.labels[j]},
                      {"score", b.table.x[j]},
                      {"pieces", pieces},
                      {"hull", {{"lower", nw.lo}, {"upper", nw.hi}}},
                      {"interval", interval_json(w)}};
  b.env.diagnostics = w.diagnostics;
  emit(out, b.env, a.out, csv.str());
  return 0;
}

int cmd_simulate(const std::string& config, std::optional<std::uint64_t> seed, const std::string& format,
                 std::optional<unsigned> workers, bool keep, std::ostream& out) {
  SimConfig c = read_sim_config(config);
  if (seed) c.seed = *seed;
  if (workers) c.workers = *workers;
  if (keep) c.keep_trials = true;
  const SimReport r = run_simulation(c);
  if (format == "csv") {
    out << report_to_csv(r);
    return 0;
  }
  OutputEnvelope env;
  env.mode = "simulate";
  env.alpha = c.alpha;
  env.method = "simulation";
  env.bound = "exact_mc";
  env.tail = "gaussian:1";
  env.noise = "equicorrelated:" + fmt(c.rho);
  env.seed = c.seed;
  env.mc_samples = c.mc_samples;
  env.result = report_to_json(r);
  out << envelope_to_json(env).dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confidence intervals for the empirical winner with the zoom correction", "zoomcurse"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonArgs wa, ta, ia, na;
  bool population = false;
  auto* winner = app.add_subcommand("winner-ci", "Interval for the value of the empirical winner");
  add_common(winner, wa);
  winner->add_flag("--population", population, "Report the interval as covering max_i theta_i");

  std::size_t k = 1;
  auto* topk = app.add_subcommand("topk-ci", "Simultaneous intervals for the top-k empirical winners");
  add_common(topk, ta);
  topk->add_option("--k", k, "Number of winners")->required();

  auto* ident = app.add_subcommand("identity-set", "Confidence set for the index of the population winner");
  add_common(ident, ia);

  std::optional<std::size_t> index;
  std::string label;
  auto* near = app.add_subcommand("near-winner", "Confidence set for a non-winning candidate");
  add_common(near, na);
  near->add_option("--index", index, "0-based row of the candidate");
  near->add_option("--label", label, "Label of the candidate");

  std::string config, sim_out = "json";
  std::optional<std::uint64_t> sim_seed;
  std::optional<unsigned> sim_workers;
  bool keep = false;
  auto* sim = app.add_subcommand("simulate", "Run a synthetic coverage and width study");
  sim->add_option("--config", config, "key = value configuration file")->required();
  sim->add_option("--seed", sim_seed, "Override the seed from the configuration");
  sim->add_option("--out", sim_out, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sim->add_option("--workers", sim_workers, "Worker threads; results do not depend on it");
  sim->add_flag("--keep-trials", keep, "Include per-trial widths and hits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (winner->parsed()) return cmd_winner(wa, population, out);
    if (topk->parsed()) return cmd_topk(ta, k, out);
    if (ident->parsed()) return cmd_identity(ia, out);
    if (near->parsed()) return cmd_near(na, index, label, out);
    if (sim->parsed()) return cmd_simulate(config, sim_seed, sim_out, sim_workers, keep, out);
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {  // domain, dimension, unsupported method
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 4;
}

}  // namespace zoomcurse
