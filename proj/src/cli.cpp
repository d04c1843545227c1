#include "mfact/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mfact/bijection.hpp"
#include "mfact/parallel.hpp"
#include "mfact/stats.hpp"

namespace mfact::cli {

using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  std::vector<int> grid{200, 800, 3200};
  std::string kind = "decreasing";
  std::uint64_t seed = 1;
  int trials = 0;
  std::string t = "1";
  double tol = kDefaultHausdorffTolerance;
  std::string format = "json";
  std::string out;
  std::string in;
  std::string which = "distinct-exact";
  bool with_tree = false;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  throw UsageError("format '" + o.format + "' is not available for this command");
}

bool decreasing_kind(const Options& o) { return o.kind == "decreasing"; }

Factorisation factorisation_of(const PlaneTree& t, bool decreasing) {
  return decreasing ? decreasing_factorisation_of_tree(t) : increasing_factorisation_of_tree(t);
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Input document: a JSON object produced by this tool, a bare factorisation
// object, or the usual notation "(8 9),(8 10),...".
struct InputDoc {
  std::optional<Factorisation> f;
  std::optional<PlaneTree> tree;
  std::optional<std::string> kind;
};

InputDoc parse_input(const std::string& text) {
  InputDoc doc;
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    static const std::regex pair(R"(\(\s*(\d+)\s*[, ]\s*(\d+)\s*\))");
    std::vector<Transposition> taus;
    int n = 1;
    try {
      for (auto it = std::sregex_iterator(text.begin(), text.end(), pair); it != std::sregex_iterator(); ++it) {
        taus.emplace_back(std::stoi((*it)[1]), std::stoi((*it)[2]));
      }
      n = static_cast<int>(taus.size()) + 1;
      if (taus.empty()) throw InputError("input is neither JSON nor a list of transpositions");
      doc.f = Factorisation(n, std::move(taus));
    } catch (const std::logic_error& e) {
      throw InputError(std::string("malformed transposition list: ") + e.what());
    }
    return doc;
  }
  try {
    if (!j.is_object()) throw std::invalid_argument("top level must be an object");
    if (j.contains("transpositions")) {
      doc.f = factorisation_from_json(j);
    } else if (j.contains("factorisation")) {
      doc.f = factorisation_from_json(j.at("factorisation"));
    }
    if (j.contains("tree")) doc.tree = tree_from_json(j.at("tree"));
    if (j.contains("kind")) doc.kind = j.at("kind").get<std::string>();
    if (!doc.f && !doc.tree) throw std::invalid_argument("no factorisation or tree found");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed input: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed input: ") + e.what());
  }
  if (doc.kind && *doc.kind != "decreasing" && *doc.kind != "increasing") {
    throw InputError("unknown kind '" + *doc.kind + "'");
  }
  return doc;
}

ojson header(const std::string& command, ojson config) {
  ojson j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// ---- subcommands ---------------------------------------------------------

int cmd_sample(const Options& o, std::ostream& out) {
  require(o.n >= 1, "--n must be at least 1");
  require_format(o, {"json", "text"});
  const auto tree = sample_uniform_plane_tree(o.n, o.seed);
  const auto f = factorisation_of(tree, decreasing_kind(o));
  if (o.format == "text") {
    out << f.to_string() << '\n';
    if (o.with_tree) {
      for (std::size_t v = 0; v < tree.children_counts().size(); ++v) out << (v ? " " : "") << tree.children(static_cast<int>(v));
      out << '\n';
    }
    return kPass;
  }
  auto j = header("sample", ojson{{"n", o.n}, {"kind", o.kind}, {"seed", o.seed}, {"with_tree", o.with_tree}});
  j["kind"] = o.kind;
  j["factorisation"] = factorisation_to_json(f);
  if (o.with_tree) j["tree"] = tree_to_json(tree);
  out << j.dump() << '\n';
  return kPass;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  require(o.n >= 1 && o.n <= kMaxTreeEnumerationSize,
          "--n must lie in [1, " + std::to_string(kMaxTreeEnumerationSize) + "]");
  require_format(o, {"json", "text"});
  const bool dec = decreasing_kind(o);
  if (o.format == "text") {
    for_each_plane_tree(o.n, [&](const PlaneTree& t) {
      out << factorisation_of(t, dec).to_string() << '\n';
      return true;
    });
    return kPass;
  }
  // Streamed: the envelope is written around one item per line.
  auto j = header("enumerate", ojson{{"n", o.n}, {"kind", o.kind}});
  j["kind"] = o.kind;
  j["count"] = catalan(o.n - 1);
  std::string head = j.dump();
  head.pop_back();
  out << head << ",\"items\":[";
  bool first = true;
  for_each_plane_tree(o.n, [&](const PlaneTree& t) {
    out << (first ? "\n" : ",\n") << factorisation_to_json(factorisation_of(t, dec)).dump();
    first = false;
    return true;
  });
  out << "\n]}\n";
  return kPass;
}

int cmd_convert(const Options& o, std::ostream& out) {
  require(!o.in.empty(), "--in is required");
  require_format(o, {"json", "text"});
  const auto doc = parse_input(read_input(o.in));
  auto j = header("convert", ojson{{"in", o.in}, {"kind", o.kind}});
  if (doc.f) {
    const auto& f = *doc.f;
    if (!is_cycle_factorisation(f)) {
      throw InputError("input is not a minimal factorisation of the cycle");
    }
    const auto labeled = t1_forward(f);
    j["factorisation"] = factorisation_to_json(f);
    j["class"] = to_string(monotone_class(f));
    ojson lt = tree_to_json(labeled.shape);
    lt["vertex_labels"] = labeled.vertex_labels;
    lt["edge_labels"] = labeled.edge_labels;
    j["labeled_tree"] = lt;
    if (is_decreasing(f)) j["tree_decreasing"] = tree_to_json(tree_of_decreasing_factorisation(f));
    if (is_increasing(f)) j["tree_increasing"] = tree_to_json(tree_of_increasing_factorisation(f));
    if (o.format == "text") {
      out << "class " << to_string(monotone_class(f)) << '\n';
      out << "vertex_labels";
      for (int x : labeled.vertex_labels) out << ' ' << x;
      out << "\nedge_labels";
      for (int x : labeled.edge_labels) out << ' ' << x;
      out << "\nchildren";
      for (int x : labeled.shape.children_counts()) out << ' ' << x;
      out << '\n';
      return kPass;
    }
  } else {
    const auto f = factorisation_of(*doc.tree, decreasing_kind(o));
    j["kind"] = o.kind;
    j["tree"] = tree_to_json(*doc.tree);
    j["factorisation"] = factorisation_to_json(f);
    if (o.format == "text") {
      out << f.to_string() << '\n';
      return kPass;
    }
  }
  out << j.dump() << '\n';
  return kPass;
}

int cmd_verify(const Options& o, std::ostream& out) {
  require(!o.in.empty(), "--in is required");
  require_format(o, {"json", "text"});
  auto doc = parse_input(read_input(o.in));
  if (!doc.f) throw InputError("verify needs a factorisation");
  const auto result = verify_factorisation(*doc.f, doc.kind, doc.tree);
  std::vector<std::string> failures;
  for (const auto& [name, ok] : result.checks) {
    if (!ok) failures.push_back(name);
  }
  if (o.format == "text") {
    for (const auto& [name, ok] : result.checks) out << (ok ? "pass " : "FAIL ") << name << '\n';
  } else {
    auto j = header("verify", ojson{{"in", o.in}});
    j["n"] = doc.f->n();
    j["class"] = to_string(monotone_class(*doc.f));
    ojson checks = ojson::object();
    for (const auto& [name, ok] : result.checks) checks[name] = ok;
    j["checks"] = checks;
    j["failures"] = failures;
    j["pass"] = failures.empty();
    out << j.dump() << '\n';
  }
  return failures.empty() ? kPass : kInvariantFailure;
}

int cmd_stats(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text"});
  DistributionReport r;
  int n = o.n, trials = o.trials;
  if (o.which == "distinct-exact") {
    if (n == 0) n = 4;
    require(n >= 2 && n <= kMaxExactDistributionSize,
            "--n must lie in [2, " + std::to_string(kMaxExactDistributionSize) + "]");
    r = distinct_a_distribution_exact(n);
  } else if (o.which == "distinct-clt") {
    if (n == 0) n = 10000;
    if (trials == 0) trials = 2000;
    require(n >= 100 && trials >= 100, "distinct-clt needs --n >= 100 and --trials >= 100");
    r = distinct_a_clt(n, trials, o.seed);
  } else if (o.which == "parking") {
    if (n == 0) n = 1000;
    if (trials == 0) trials = 500;
    require(n >= 100 && trials >= 1, "parking needs --n >= 100 and --trials >= 1");
    r = parking_cdf_fluctuation(n, trials, o.seed);
  } else {
    throw UsageError("--which must be distinct-exact, distinct-clt or parking");
  }
  if (o.format == "text") {
    out << r.to_text();
  } else {
    ojson config{{"which", o.which}, {"n", n}};
    if (!r.exact) {
      config["trials"] = trials;
      config["seed"] = o.seed;
    }
    auto j = header("stats", config);
    j["report"] = r.to_json();
    out << j.dump() << '\n';
  }
  return r.passed() ? kPass : kInvariantFailure;
}

int cmd_lamination(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text", "svg"});
  Rational t;
  try {
    t = parse_rational(o.t);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--t: ") + e.what());
  }
  require(t >= 0 && t <= 1, "--t must lie in [0, 1]");
  Factorisation f;
  ojson config;
  if (!o.in.empty()) {
    auto doc = parse_input(read_input(o.in));
    if (!doc.f) throw InputError("lamination needs a factorisation");
    if (!is_cycle_factorisation(*doc.f)) throw InputError("input is not a minimal factorisation of the cycle");
    f = *doc.f;
    config = ojson{{"in", o.in}, {"t", o.t}};
  } else {
    require(o.n >= 1, "--n must be at least 1");
    f = factorisation_of(sample_uniform_plane_tree(o.n, o.seed), decreasing_kind(o));
    config = ojson{{"n", o.n}, {"kind", o.kind}, {"seed", o.seed}, {"t", o.t}};
  }
  const StepLaminationProcess process(f);
  const auto L = process.at_time(t);
  if (o.format == "svg") {
    out << render_svg(L);
    return kPass;
  }
  const auto k = boost::rational_cast<std::int64_t>(
      Rational(static_cast<std::int64_t>(f.n())) * t);  // floor, t >= 0
  if (o.format == "text") {
    for (const auto& c : L.chords()) out << c.u << ' ' << c.v << '\n';
    return kPass;
  }
  auto j = header("lamination", config);
  j["n"] = f.n();
  j["step"] = std::min<std::int64_t>(k, f.n() - 1);
  ojson chords = ojson::array();
  for (const auto& c : L.chords()) chords.push_back(chord_to_json(c));
  j["chords"] = chords;
  j["non_crossing"] = is_non_crossing(L.chords());
  out << j.dump() << '\n';
  return kPass;
}

struct DistanceRow {
  int n = 0;
  std::uint64_t seed = 0;
  AlignmentBound bound;
};

int cmd_distance(const Options& o, std::ostream& out) {
  require_format(o, {"json", "text"});
  require(o.kind == "decreasing", "distance is defined for --kind decreasing only");
  require(o.tol > 0, "--tol must be positive");
  std::vector<DistanceRow> rows;
  ojson config;
  if (!o.in.empty()) {
    auto doc = parse_input(read_input(o.in));
    if (!doc.f) throw InputError("distance needs a factorisation");
    if (!is_cycle_factorisation(*doc.f) || !is_decreasing(*doc.f)) {
      throw InputError("input is not a decreasing factorisation");
    }
    require(doc.f->n() >= 2, "distance needs n >= 2");
    rows.push_back({doc.f->n(), 0, alignment_bound(*doc.f, o.tol)});
    config = ojson{{"in", o.in}, {"tol", o.tol}};
  } else {
    std::vector<int> grid = o.n ? std::vector<int>{o.n} : o.grid;
    const int seeds = o.trials ? o.trials : 20;
    require(!grid.empty(), "empty n-grid");
    for (int n : grid) require(n >= 2 && n <= 1000000, "grid sizes must lie in [2, 1000000]");
    require(seeds >= 1, "--trials must be positive");
    for (int n : grid) {
      for (int s = 0; s < seeds; ++s) rows.push_back({n, o.seed + static_cast<std::uint64_t>(s), {}});
    }
    parallel_for(rows.size(), [&](std::size_t r) {
      const auto f = decreasing_factorisation_of_tree(sample_uniform_plane_tree(rows[r].n, rows[r].seed));
      rows[r].bound = alignment_bound(f, o.tol);
    });
    config = ojson{{"grid", grid}, {"seed", o.seed}, {"trials", seeds}, {"kind", o.kind}, {"tol", o.tol}};
  }

  // Summaries in grid order.
  std::vector<int> order;
  for (const auto& r : rows) {
    if (std::find(order.begin(), order.end(), r.n) == order.end()) order.push_back(r.n);
  }
  ojson summary = ojson::array();
  std::vector<double> medians;
  for (int n : order) {
    std::vector<double> v;
    for (const auto& r : rows) {
      if (r.n == n) v.push_back(r.bound.value);
    }
    medians.push_back(median(v));
    summary.push_back(ojson{{"n", n},
                            {"samples", v.size()},
                            {"median", medians.back()},
                            {"q25", quantile(v, 0.25)},
                            {"q75", quantile(v, 0.75)},
                            {"min", *std::min_element(v.begin(), v.end())},
                            {"max", *std::max_element(v.begin(), v.end())}});
  }
  bool decreasing_trend = true;
  for (std::size_t i = 1; i < medians.size(); ++i) decreasing_trend = decreasing_trend && medians[i] < medians[i - 1];

  if (o.format == "text") {
    out << "n seed D time_term hausdorff_term phi_increasing\n";
    for (const auto& r : rows) {
      out << r.n << ' ' << r.seed << ' ' << r.bound.value << ' ' << r.bound.time_term << ' '
          << r.bound.hausdorff_term << ' ' << (r.bound.phi_increasing ? 1 : 0) << '\n';
    }
    for (const auto& s : summary) out << "median n=" << s["n"] << ' ' << s["median"] << '\n';
    return kPass;
  }
  auto j = header("distance", config);
  ojson table = ojson::array();
  for (const auto& r : rows) {
    table.push_back(ojson{{"n", r.n},
                          {"seed", r.seed},
                          {"value", r.bound.value},
                          {"time_term", r.bound.time_term},
                          {"hausdorff_term", r.bound.hausdorff_term},
                          {"phi_increasing", r.bound.phi_increasing}});
  }
  j["rows"] = table;
  j["summary"] = summary;
  j["medians_strictly_decreasing"] = decreasing_trend;
  out << j.dump() << '\n';
  return kPass;
}

}  // namespace

// ---- serialisation ---------------------------------------------------------

ojson factorisation_to_json(const Factorisation& f) {
  ojson pairs = ojson::array();
  for (const auto& t : f.taus()) pairs.push_back({t.a, t.b});
  return ojson{{"n", f.n()}, {"transpositions", pairs}};
}

Factorisation factorisation_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Transposition> taus;
    for (const auto& p : j.at("transpositions")) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("transposition must be a pair");
      taus.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    return Factorisation(n, std::move(taus));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad factorisation: ") + e.what());
  }
}

ojson tree_to_json(const PlaneTree& t) { return ojson{{"children_counts", t.children_counts()}}; }

PlaneTree tree_from_json(const nlohmann::json& j) {
  try {
    return PlaneTree(j.at("children_counts").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad tree: ") + e.what());
  }
}

ojson chord_to_json(const Chord& c) {
  return ojson::array({ojson::array({c.u.numerator(), c.u.denominator()}),
                       ojson::array({c.v.numerator(), c.v.denominator()})});
}

Chord chord_from_json(const nlohmann::json& j) {
  try {
    auto q = [](const nlohmann::json& p) {
      return Rational(p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>());
    };
    return Chord(q(j.at(0)), q(j.at(1)));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad chord: ") + e.what());
  } catch (const boost::bad_rational& e) {
    throw std::invalid_argument(std::string("bad chord: ") + e.what());
  }
}

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(\s*(\d{1,18})\s*/\s*(\d{1,18})\s*)");
  static const std::regex decimal(R"(\s*(\d{1,9})(?:\.(\d{0,9}))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    const auto den = std::stoll(m[2]);
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(std::stoll(m[1]), den);
  }
  if (std::regex_match(text, m, decimal)) {
    const std::string frac = m[2].matched ? m[2].str() : "";
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(std::stoll(m[1]) * scale + (frac.empty() ? 0 : std::stoll(frac)), scale);
  }
  throw std::invalid_argument("not a rational: '" + text + "'");
}

bool VerifyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

VerifyResult verify_factorisation(const Factorisation& f, const std::optional<std::string>& kind,
                                  const std::optional<PlaneTree>& tree) {
  VerifyResult r;
  auto add = [&](const char* name, bool ok) { r.checks.emplace_back(name, ok); };
  const bool cycle = is_cycle_factorisation(f);
  add("minimal_factorisation", cycle);
  const bool dec = is_decreasing(f), inc = is_increasing(f);
  if (kind) add("kind_matches", *kind == "decreasing" ? dec : inc);
  if (!cycle) return r;

  add("t2_roundtrip", factorisation_from_labels(t1_forward(f)) == f);
  if (dec) {
    auto b = f.b_values();
    std::sort(b.begin(), b.end());
    bool b_set = true;
    for (std::size_t i = 0; i < b.size(); ++i) b_set = b_set && b[i] == static_cast<int>(i) + 2;
    add("b_values_are_2_to_n", b_set);
    const auto parking = to_parking_word(f);
    add("parking_word_increasing", is_increasing_parking_function(parking));
    const auto word = to_231_word(f);
    add("b_word_avoids_231", is_231_avoiding(word));
    const auto t = tree_of_decreasing_factorisation(f);
    add("t3_decreasing_roundtrip", decreasing_factorisation_of_tree(t) == f);
    add("sandwich_identity", profile_identity_check(f));
    if (tree && (!kind || *kind == "decreasing")) add("tree_matches", t == *tree);
  }
  if (inc) {
    add("a_b_partition", increasing_partition_check(f));
    const auto t = tree_of_increasing_factorisation(f);
    add("t3_increasing_roundtrip", increasing_factorisation_of_tree(t) == f);
    if (tree && kind && *kind == "increasing") add("tree_matches", t == *tree);
  }
  return r;
}

// ---- entry point -----------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Monotone minimal factorisations of the cycle (1 ... n): sampling, bijections, laminations"};
  app.name("mfact");
  app.require_subcommand(1);

  auto add_kind = [&](CLI::App* s) {
    s->add_option("--kind", o.kind, "decreasing or increasing")->check(CLI::IsMember({"decreasing", "increasing"}));
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "json, text or svg");
    s->add_option("--out", o.out, "write results to this file");
  };

  auto* sample = app.add_subcommand("sample", "uniform random monotone factorisation");
  sample->add_option("--n", o.n, "size")->required();
  add_kind(sample);
  sample->add_option("--seed", o.seed, "64-bit seed");
  sample->add_flag("--with-tree", o.with_tree, "include the generating plane tree");
  add_common(sample);

  auto* enumerate = app.add_subcommand("enumerate", "all monotone factorisations of size n");
  enumerate->add_option("--n", o.n, "size")->required();
  add_kind(enumerate);
  add_common(enumerate);

  auto* convert = app.add_subcommand("convert", "factorisation <-> tree");
  convert->add_option("--in", o.in, "input file, - for stdin")->required();
  add_kind(convert);
  add_common(convert);

  auto* verify = app.add_subcommand("verify", "run the invariant suite on a serialized factorisation");
  verify->add_option("--in", o.in, "input file, - for stdin")->required();
  add_common(verify);

  auto* stats = app.add_subcommand("stats", "distribution reports");
  stats->add_option("--which", o.which, "distinct-exact, distinct-clt or parking");
  stats->add_option("--n", o.n, "size");
  stats->add_option("--trials", o.trials, "number of samples");
  stats->add_option("--seed", o.seed, "64-bit seed");
  add_common(stats);

  auto* lamination = app.add_subcommand("lamination", "snapshot of the discrete lamination process");
  lamination->add_option("--n", o.n, "size");
  add_kind(lamination);
  lamination->add_option("--seed", o.seed, "64-bit seed");
  lamination->add_option("--t", o.t, "time in [0,1], decimal or p/q");
  lamination->add_option("--in", o.in, "use this factorisation instead of sampling");
  add_common(lamination);

  auto* distance = app.add_subcommand("distance", "alignment bound D_n over an n-grid and seeds");
  distance->add_option("--n", o.n, "single size (overrides --grid)");
  distance->add_option("--grid", o.grid, "comma-separated sizes")->delimiter(',');
  add_kind(distance);
  distance->add_option("--seed", o.seed, "first seed; trial s uses seed + s");
  distance->add_option("--trials", o.trials, "number of seeds per size (default 20)");
  distance->add_option("--tol", o.tol, "Hausdorff tolerance");
  distance->add_option("--in", o.in, "use this factorisation instead of sampling");
  add_common(distance);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  std::ofstream file;
  const bool to_file = !o.out.empty();
  if (to_file) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "mfact: cannot write " << o.out << '\n';
      return kIoError;
    }
  }
  std::ostream& sink = to_file ? static_cast<std::ostream&>(file) : out;
  int code = kPass;
  try {
    if (sample->parsed()) code = cmd_sample(o, sink);
    else if (enumerate->parsed()) code = cmd_enumerate(o, sink);
    else if (convert->parsed()) code = cmd_convert(o, sink);
    else if (verify->parsed()) code = cmd_verify(o, sink);
    else if (stats->parsed()) code = cmd_stats(o, sink);
    else if (lamination->parsed()) code = cmd_lamination(o, sink);
    else if (distance->parsed()) code = cmd_distance(o, sink);
  } catch (const UsageError& e) {
    err << "mfact: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "mfact: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "mfact: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "mfact: " << e.what() << '\n';
    return kUsage;
  }
  if (to_file) {
    file.close();
    if (!file) {
      err << "mfact: cannot write " << o.out << '\n';
      return kIoError;
    }
  }
  if (!out) return kIoError;
  return code;
}

}  // namespace mfact::cli
