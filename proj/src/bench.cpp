#include "pbitsa/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "pbitsa/error.hpp"
#include "pbitsa/format.hpp"
#include "pbitsa/graph_io.hpp"
#include "pbitsa/parallel.hpp"

namespace pbitsa {

using Json = nlohmann::ordered_json;

namespace {

const char* signal_name(SignalKind kind) {
  return kind == SignalKind::uniform ? "uniform" : "poisson";
}

SignalKind parse_signal(const std::string& name) {
  if (name == "uniform") return SignalKind::uniform;
  if (name == "poisson") return SignalKind::poisson;
  fail(ErrorKind::parse, "unknown signal kind '" + name + "'");
}

struct Summary {
  double min = 0.0, mean = 0.0, max = 0.0;
};

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = std::clamp(sum / static_cast<double>(values.size()), s.min, s.max);
  return s;
}

Json optional_number(const std::optional<double>& value) {
  return value ? Json(*value) : Json(nullptr);
}

std::optional<double> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

BenchmarkResult run_benchmark(const IsingModel& model, const Graph* graph,
                              const std::string& name, const BenchmarkOptions& options) {
  if (options.trials < 1) fail(ErrorKind::config, "trials must be at least 1");

  BenchmarkResult result;
  BenchmarkStats& stats = result.stats;
  stats.graph_name = name;
  stats.n_nodes = model.size();
  stats.n_edges = graph ? graph->edges.size() : model.coupling_count();
  stats.algorithm = options.algorithm;
  stats.trials = options.trials;
  stats.cycles = options.cycles;
  stats.seed = options.seed;
  stats.signal = options.signal;
  stats.lambda = options.lambda;
  stats.gamma = options.gamma;
  stats.delta = options.delta;
  stats.oscillation_criteria = options.oscillation;
  if (options.algorithm == Algorithm::tapsa) stats.alpha = options.alpha;
  if (options.algorithm == Algorithm::spsa) stats.p_stall = options.p_stall;

  EngineConfig base;
  base.algorithm = options.algorithm;
  base.alpha = options.alpha;
  base.p_stall = options.p_stall;
  base.cycles = options.cycles;
  base.signal = options.signal;
  base.lambda = options.lambda;
  if (options.cycles < 2) fail(ErrorKind::config, "cycles must be at least 2");
  if (options.algorithm == Algorithm::sa) {
    base.schedule = make_sa_schedule(options.cycles);
  } else {
    const auto schedule = derive_schedule(model, options.gamma, options.delta, options.cycles);
    if (schedule.zero_scale_fraction > 0.1) {
      stats.warnings.push_back("more than 10% of nodes have zero coupling scale");
    }
    base.schedule = schedule;
  }
  base.validate();
  stats.schedule = base.schedule;

  std::vector<TrialOutcome> outcomes(options.trials);
  if (options.keep_runs) result.runs.resize(options.trials);
  parallel_for(options.trials, options.threads, [&](std::size_t k) {
    EngineConfig config = base;
    config.seed = derive_seed(options.seed, k);
    const auto start = std::chrono::steady_clock::now();
    RunResult run_result = run(model, graph, config);
    const auto stop = std::chrono::steady_clock::now();

    TrialOutcome& outcome = outcomes[k];
    outcome.index = k;
    outcome.seed = config.seed;
    outcome.cut = run_result.final_cut;
    outcome.energy = run_result.final_energy;
    if (run_result.mean_spin_trace.size() >= options.oscillation.window) {
      outcome.oscillation = detect_oscillation(run_result.mean_spin_trace, options.oscillation);
    }
    outcome.wall_seconds = std::chrono::duration<double>(stop - start).count();
    if (options.keep_runs) result.runs[k] = std::move(run_result);
  });

  std::vector<double> energies;
  std::vector<double> cuts;
  for (const auto& o : outcomes) {
    energies.push_back(o.energy);
    if (o.cut) cuts.push_back(*o.cut);
    if (o.oscillation.detected) ++stats.oscillating_trials;
  }
  const Summary e = summarize(energies);
  stats.min_energy = e.min;
  stats.mean_energy = e.mean;
  stats.max_energy = e.max;
  if (graph) {
    const Summary c = summarize(cuts);
    stats.min_cut = c.min;
    stats.mean_cut = c.mean;
    stats.max_cut = c.max;
    if (const auto* entry = find_benchmark(name)) {
      stats.best_known = entry->best_known;
      stats.normalized_min = c.min / entry->best_known;
      stats.normalized_mean = c.mean / entry->best_known;
      stats.normalized_max = c.max / entry->best_known;
      if (entry->n_nodes != graph->n || entry->n_edges != graph->edges.size()) {
        stats.warnings.push_back("graph size differs from the registered " + std::string(entry->name));
      }
    } else {
      stats.warnings.push_back("no best-known value for '" + name +
                               "'; normalized statistics omitted");
    }
  }
  stats.outcomes = std::move(outcomes);
  return result;
}

BenchmarkResult run_benchmark(const std::filesystem::path& graph_file,
                              const BenchmarkOptions& options, std::optional<std::string> name) {
  const Graph graph = read_gset_file(graph_file);
  const IsingModel model = build_ising(graph);
  return run_benchmark(model, &graph, name.value_or(graph_file.stem().string()), options);
}

std::string benchmark_json(const BenchmarkStats& stats, bool include_timing) {
  Json j;
  j["schema_version"] = kResultSchemaVersion;
  j["graph"] = {{"name", stats.graph_name}, {"nodes", stats.n_nodes}, {"edges", stats.n_edges}};

  Json config;
  config["algorithm"] = to_string(stats.algorithm);
  if (stats.alpha) config["alpha"] = *stats.alpha;
  if (stats.p_stall) config["p"] = *stats.p_stall;
  config["cycles"] = stats.cycles;
  config["trials"] = stats.trials;
  config["seed"] = stats.seed;
  config["gamma"] = stats.gamma;
  config["delta"] = stats.delta;
  config["signal"] = signal_name(stats.signal);
  config["lambda"] = stats.lambda;
  j["config"] = std::move(config);

  if (const auto* s = std::get_if<AnnealSchedule>(&stats.schedule)) {
    j["schedule"] = {{"kind", "i0"},
                     {"i0_min", s->i0_min},
                     {"i0_max", s->i0_max},
                     {"beta", s->beta},
                     {"mean_scale", s->mean_scale},
                     {"zero_scale_fraction", s->zero_scale_fraction}};
  } else if (const auto* s = std::get_if<SaTempSchedule>(&stats.schedule)) {
    j["schedule"] = {{"kind", "temperature"},
                     {"t_init", s->t_init},
                     {"t_final", s->t_final},
                     {"delta_it", s->delta_it()}};
  }

  Json st = Json::object();
  const std::pair<const char*, const std::optional<double>*> cut_fields[] = {
      {"min_cut", &stats.min_cut},
      {"mean_cut", &stats.mean_cut},
      {"max_cut", &stats.max_cut},
      {"best_known", &stats.best_known},
      {"normalized_min", &stats.normalized_min},
      {"normalized_mean", &stats.normalized_mean},
      {"normalized_max", &stats.normalized_max}};
  for (const auto& [key, value] : cut_fields) {
    if (*value) st[key] = **value;
  }
  st["min_energy"] = stats.min_energy;
  st["mean_energy"] = stats.mean_energy;
  st["max_energy"] = stats.max_energy;
  j["stats"] = std::move(st);

  j["oscillation"] = {{"window", stats.oscillation_criteria.window},
                      {"min_alternation", stats.oscillation_criteria.min_alternation},
                      {"min_amplitude", stats.oscillation_criteria.min_amplitude},
                      {"oscillating_trials", stats.oscillating_trials}};

  Json trials = Json::array();
  for (const auto& o : stats.outcomes) {
    Json t;
    t["trial"] = o.index;
    t["seed"] = o.seed;
    t["cut"] = optional_number(o.cut);
    t["energy"] = o.energy;
    t["oscillation"] = {
        {"detected", o.oscillation.detected},
        {"onset_cycle", o.oscillation.onset_cycle ? Json(*o.oscillation.onset_cycle) : Json(nullptr)},
        {"alternation_fraction", o.oscillation.alternation_fraction},
        {"mean_amplitude", o.oscillation.mean_amplitude}};
    if (include_timing) t["wall_seconds"] = o.wall_seconds;
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);
  j["warnings"] = stats.warnings;
  return j.dump(2) + "\n";
}

BenchmarkStats parse_benchmark_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("invalid result JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kResultSchemaVersion) {
      fail(ErrorKind::parse, "unsupported result schema version");
    }
    BenchmarkStats s;
    const auto& graph = j.at("graph");
    s.graph_name = graph.at("name").get<std::string>();
    s.n_nodes = graph.at("nodes").get<std::size_t>();
    s.n_edges = graph.at("edges").get<std::size_t>();
    const auto& config = j.at("config");
    s.algorithm = parse_algorithm(config.at("algorithm").get<std::string>());
    if (config.contains("alpha")) s.alpha = config.at("alpha").get<std::size_t>();
    if (config.contains("p")) s.p_stall = config.at("p").get<double>();
    s.cycles = config.at("cycles").get<std::size_t>();
    s.trials = config.at("trials").get<std::size_t>();
    s.seed = config.at("seed").get<std::uint64_t>();
    s.gamma = config.at("gamma").get<double>();
    s.delta = config.at("delta").get<double>();
    s.signal = parse_signal(config.at("signal").get<std::string>());
    s.lambda = config.at("lambda").get<double>();

    if (j.contains("schedule")) {
      const auto& sch = j.at("schedule");
      if (sch.at("kind") == "i0") {
        AnnealSchedule a;
        a.i0_min = sch.at("i0_min").get<double>();
        a.i0_max = sch.at("i0_max").get<double>();
        a.beta = sch.at("beta").get<double>();
        a.mean_scale = sch.at("mean_scale").get<double>();
        a.zero_scale_fraction = sch.at("zero_scale_fraction").get<double>();
        a.cycles = s.cycles;
        a.gamma = s.gamma;
        a.delta = s.delta;
        s.schedule = a;
      } else {
        SaTempSchedule t;
        t.t_init = sch.at("t_init").get<double>();
        t.t_final = sch.at("t_final").get<double>();
        t.cycles = s.cycles;
        s.schedule = t;
      }
    }

    const auto& st = j.at("stats");
    s.min_cut = read_optional(st, "min_cut");
    s.mean_cut = read_optional(st, "mean_cut");
    s.max_cut = read_optional(st, "max_cut");
    s.best_known = read_optional(st, "best_known");
    s.normalized_min = read_optional(st, "normalized_min");
    s.normalized_mean = read_optional(st, "normalized_mean");
    s.normalized_max = read_optional(st, "normalized_max");
    s.min_energy = st.at("min_energy").get<double>();
    s.mean_energy = st.at("mean_energy").get<double>();
    s.max_energy = st.at("max_energy").get<double>();
    const auto& osc = j.at("oscillation");
    s.oscillation_criteria.window = osc.at("window").get<std::size_t>();
    s.oscillation_criteria.min_alternation = osc.at("min_alternation").get<double>();
    s.oscillation_criteria.min_amplitude = osc.at("min_amplitude").get<double>();
    s.oscillating_trials = osc.at("oscillating_trials").get<std::size_t>();

    for (const auto& t : j.at("trials")) {
      TrialOutcome o;
      o.index = t.at("trial").get<std::size_t>();
      o.seed = t.at("seed").get<std::uint64_t>();
      o.cut = read_optional(t, "cut");
      o.energy = t.at("energy").get<double>();
      const auto& osc = t.at("oscillation");
      o.oscillation.detected = osc.at("detected").get<bool>();
      if (!osc.at("onset_cycle").is_null()) {
        o.oscillation.onset_cycle = osc.at("onset_cycle").get<std::size_t>();
      }
      o.oscillation.alternation_fraction = osc.at("alternation_fraction").get<double>();
      o.oscillation.mean_amplitude = osc.at("mean_amplitude").get<double>();
      if (t.contains("wall_seconds")) o.wall_seconds = t.at("wall_seconds").get<double>();
      s.outcomes.push_back(o);
    }
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("result JSON missing or mistyped field: ") + e.what());
  }
}

std::string traces_csv(const RunResult& result) {
  std::string out = "cycle,i0,energy,mean_spin\n";
  for (std::size_t t = 0; t < result.energy_trace.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(result.i0_trace[t]);
    out += ',';
    out += format_double(result.energy_trace[t]);
    out += ',';
    out += format_double(result.mean_spin_trace[t]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) fail(ErrorKind::io, "failed writing '" + path.string() + "'");
}

void emit_traces(const RunResult& result, const std::filesystem::path& path) {
  write_text_file(path, traces_csv(result));
}

TraceTable parse_traces_csv(std::string_view text) {
  TraceTable table;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "cycle,i0,energy,mean_spin") throw ParseError(1, "unexpected trace header");
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 fields");
    try {
      if (parse_double(fields[0]) != static_cast<double>(table.i0.size())) {
        throw ParseError(line_no, "cycle index out of sequence");
      }
      table.i0.push_back(parse_double(fields[1]));
      table.energy.push_back(parse_double(fields[2]));
      table.mean_spin.push_back(parse_double(fields[3]));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return table;
}

namespace {

std::string format_fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string param_label(const BenchmarkStats& s) {
  if (s.alpha) return "alpha=" + std::to_string(*s.alpha);
  if (s.p_stall) return "p=" + format_double(*s.p_stall);
  return "";
}

}  // namespace

SummaryReport summarize_table(std::span<const BenchmarkStats> results) {
  if (results.empty()) fail(ErrorKind::invalid_input, "nothing to summarize");
  SummaryReport report;

  for (Algorithm a : {Algorithm::sa, Algorithm::psa, Algorithm::tapsa, Algorithm::spsa}) {
    const bool present = std::any_of(results.begin(), results.end(),
                                     [&](const BenchmarkStats& s) { return s.algorithm == a; });
    if (present) report.algorithms.emplace_back(to_string(a));
  }
  const std::size_t columns = report.algorithms.size();
  auto column_of = [&](Algorithm a) {
    return static_cast<std::size_t>(
        std::find(report.algorithms.begin(), report.algorithms.end(), to_string(a)) -
        report.algorithms.begin());
  };

  for (const auto& s : results) {
    const std::size_t col = column_of(s.algorithm);
    auto row = std::find_if(report.rows.begin(), report.rows.end(), [&](const SummaryRow& r) {
      return r.graph == s.graph_name && !r.mean_cut[col] && !r.normalized_mean[col];
    });
    if (row == report.rows.end()) {
      SummaryRow fresh;
      fresh.graph = s.graph_name;
      fresh.mean_cut.resize(columns);
      fresh.normalized_mean.resize(columns);
      fresh.params.resize(columns);
      report.rows.push_back(std::move(fresh));
      row = report.rows.end() - 1;
    }
    if (s.best_known) row->best_known = s.best_known;
    row->mean_cut[col] = s.mean_cut;
    row->normalized_mean[col] = s.normalized_mean;
    row->params[col] = param_label(s);
  }

  const auto first_trials = results.front().trials;
  if (std::any_of(results.begin(), results.end(),
                  [&](const BenchmarkStats& s) { return s.trials != first_trials; })) {
    report.warnings.push_back("results use different trial counts");
  }

  report.average_normalized_mean.resize(columns);
  for (std::size_t c = 0; c < columns; ++c) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : report.rows) {
      if (row.normalized_mean[c]) {
        sum += *row.normalized_mean[c];
        ++count;
      }
    }
    if (count > 0) report.average_normalized_mean[c] = sum / static_cast<double>(count);
  }

  std::string text = "| graph | best known |";
  for (const auto& a : report.algorithms) text += " " + a + " mean cut |";
  text += "\n|---|---|";
  for (std::size_t c = 0; c < columns; ++c) text += "---|";
  text += "\n";
  for (const auto& row : report.rows) {
    text += "| " + row.graph + " | " + (row.best_known ? format_fixed(*row.best_known, 0) : "-") + " |";
    for (std::size_t c = 0; c < columns; ++c) {
      std::string cell = " -";
      if (row.mean_cut[c]) {
        cell = " " + format_fixed(*row.mean_cut[c], 2);
        if (row.normalized_mean[c]) cell += " (" + format_fixed(100.0 * *row.normalized_mean[c], 1) + "%)";
        if (!row.params[c].empty()) cell += " [" + row.params[c] + "]";
      }
      text += cell + " |";
    }
    text += "\n";
  }
  text += "| average normalized | |";
  for (std::size_t c = 0; c < columns; ++c) {
    const auto& avg = report.average_normalized_mean[c];
    text += " " + (avg ? format_fixed(100.0 * *avg, 1) + "%" : std::string("-")) + " |";
  }
  text += "\n";
  for (const auto& w : report.warnings) text += "warning: " + w + "\n";
  report.text = std::move(text);
  return report;
}

}  // namespace pbitsa
