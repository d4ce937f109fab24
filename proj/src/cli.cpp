#include "qcantor/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "qcantor/combinatorics.hpp"
#include "qcantor/construction.hpp"
#include "qcantor/stats.hpp"
#include "qcantor/transforms.hpp"

namespace qcantor::cli {

namespace {

using nlohmann::ordered_json;
namespace cons = construction;

struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  std::size_t precision_cap = combinatorics::kDefaultBoundPrecisionCap;
  std::size_t lookahead_cap = kDefaultLookaheadCap;
  std::uint64_t enumeration_budget = combinatorics::kDefaultEnumerationBudget;
  std::string output;  // "json", "csv" or empty for the command's default
  std::string output_path;
};

struct PositionRange {
  Position first;
  Position last;

  std::size_t size() const { return Integer(last - first + 1).get_ui(); }
};

PositionRange parse_range(const std::string& text, std::uint64_t budget) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw DomainError("positions must look like 'a..b', got '" + text + "'");
  PositionRange r{parse_integer(text.substr(0, dots)), parse_integer(text.substr(dots + 2))};
  if (r.first < 1 || r.last < r.first) throw DomainError("positions 'a..b' need 1 <= a <= b, got '" + text + "'");
  if (Integer(r.last - r.first + 1) > Integer(static_cast<unsigned long>(budget))) {
    throw BudgetExceeded("position range '" + text + "' is larger than the enumeration budget");
  }
  return r;
}

std::unique_ptr<DigitOracle> parse_source(const std::string& text) {
  if (text == "eta") return std::make_unique<EtaOracle>();
  if (text.rfind("rational:", 0) == 0) {
    return std::make_unique<RationalOracle>(parse_rational(text.substr(9)), cons::constructed_q());
  }
  if (text.rfind("theta:", 0) == 0) {
    const Integer seed = parse_integer(text.substr(6));
    if (seed < 0 || !seed.fits_ulong_p()) throw DomainError("theta seed must fit an unsigned 64-bit integer");
    return std::make_unique<ThetaOracle>(seed.get_ui());
  }
  throw DomainError("source must be eta, rational:<p/q> or theta:<seed>, got '" + text + "'");
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write_csv(std::ostream& os) const {
    write_row(os, header_);
    for (const auto& r : rows_) write_row(os, r);
  }

  ordered_json to_json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows_) {
      ordered_json obj;
      for (std::size_t c = 0; c < header_.size(); ++c) obj[header_[c]] = r[c];
      arr.push_back(std::move(obj));
    }
    return arr;
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << csv_field(row[c]);
    }
    os << "\r\n";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string decimal12(const Rational& v) { return to_decimal(v, 12); }

// Each command renders either a table (CSV-first) or a JSON document.
struct Artifact {
  std::optional<Table> table;
  std::optional<ordered_json> document;
  bool json_default = false;  // digit dumps default to the Expansion JSON
  int status = kOk;
};

void emit(const Artifact& a, const RunConfig& cfg, std::ostream& os) {
  const bool want_json = cfg.output.empty() ? (a.json_default || !a.table) : cfg.output == "json";
  if (want_json) {
    const ordered_json doc = a.document ? *a.document : a.table->to_json();
    os << doc.dump(2) << "\n";
    return;
  }
  if (a.table) {
    a.table->write_csv(os);
    return;
  }
  throw DomainError("this command has no CSV form; use --output json");
}

Table digits_table(const Expansion& e, bool with_integer_part) {
  Table t({"n", "digit", "base"});
  if (with_integer_part) t.add({"0", e.integer_part.get_str(), ""});
  for (std::size_t k = 0; k < e.prefix.digits.size(); ++k) {
    t.add({Integer(e.prefix.start + static_cast<unsigned long>(k)).get_str(), e.prefix.digits[k].get_str(),
           e.prefix.bases[k].get_str()});
  }
  return t;
}

Artifact expansion_artifact(const Expansion& e, bool with_integer_part) {
  Artifact a;
  a.document = to_json(e);
  a.table = digits_table(e, with_integer_part);
  a.json_default = true;
  return a;
}

// --------------------------------------------------------------- commands

Artifact cmd_params(unsigned long max_i) {
  if (max_i < 2) throw DomainError("--max-i must be >= 2");
  Table t({"i", "n_i", "ell_i", "L_i", "beta_i", "K_i", "m_i", "card_I_i", "dim_ratio"});
  for (cons::Index i = 2; i <= max_i; ++i) {
    const auto& p = cons::params(i);
    const auto desc = cons::i_descriptor(i);
    std::string ratio;
    if (i >= 3 && desc.cardinality() >= 1) ratio = cons::dim_ratio(i).lo.to_string(12);
    t.add({std::to_string(i), p.n.get_str(), p.ell.get_str(), p.L.get_str(), p.beta.get_str(), desc.bound.get_str(),
           desc.modulus.get_str(), desc.cardinality().get_str(), ratio});
  }
  Artifact a;
  a.table = std::move(t);
  return a;
}

Artifact cmd_q_digits(const PositionRange& r) {
  const auto& q = cons::constructed_q();
  Table t({"n", "base"});
  ordered_json doc;
  doc["start"] = r.first.get_str();
  auto& bases = doc["bases"] = ordered_json::array();
  for (Position n = r.first; n <= r.last; ++n) {
    const std::string b = q.base_at(n).get_str();
    t.add({n.get_str(), b});
    bases.push_back(b);
  }
  Artifact a;
  a.table = std::move(t);
  a.document = std::move(doc);
  a.json_default = true;
  return a;
}

Artifact cmd_eta_digits(const PositionRange& r) {
  EtaOracle eta;
  Expansion e;
  e.integer_part = 0;
  e.prefix = eta.window(r.first, r.size());
  return expansion_artifact(e, false);
}

Artifact cmd_expand(const std::string& x_text, std::size_t count) {
  const Rational x = parse_rational(x_text);
  return expansion_artifact(expand_rational(x, cons::constructed_q(), count), true);
}

Artifact cmd_transform(const std::string& r_text, const std::string& s_text, const std::string& source,
                       const PositionRange& range, const RunConfig& cfg) {
  const AffineMap m(parse_rational(r_text), parse_rational(s_text));
  const auto x = parse_source(source);
  Expansion image;
  image.integer_part = tau_digit(m, *x, 0, cfg.lookahead_cap);
  image.prefix.start = range.first;
  Table t({"n", "source_digit", "image_digit", "base", "differs"});
  ordered_json diff = ordered_json::array();
  for (Position n = range.first; n <= range.last; ++n) {
    const Integer digit = tau_digit(m, *x, n, cfg.lookahead_cap);
    const Integer original = x->digit_at(n);
    const Integer base = x->base_at(n);
    image.prefix.digits.push_back(digit);
    image.prefix.bases.push_back(base);
    const bool differs = digit != original;
    if (differs) diff.push_back(n.get_str());
    t.add({n.get_str(), original.get_str(), digit.get_str(), base.get_str(), differs ? "1" : "0"});
  }
  Artifact a;
  ordered_json doc = to_json(image);
  doc["diff"] = std::move(diff);
  a.document = std::move(doc);
  a.table = std::move(t);
  a.json_default = true;
  return a;
}

Artifact cmd_stats(const std::string& source, const std::string& block_text, const std::vector<std::uint64_t>& cps) {
  const auto x = parse_source(source);
  const auto block = stats::parse_block(block_text);
  const auto series = stats::ratio_series(*x, block, cps);
  Table t({"n", "count", "qnk", "ratio_exact", "ratio_decimal"});
  for (const auto& p : series) {
    t.add({std::to_string(p.n), std::to_string(p.count), to_string(p.qnk), to_string(p.ratio), decimal12(p.ratio)});
  }
  Artifact a;
  a.table = std::move(t);
  return a;
}

Artifact cmd_discrepancy(const std::string& source, const PositionRange& r) {
  const auto x = parse_source(source);
  std::vector<Position> positions;
  for (Position n = r.first; n <= r.last; ++n) positions.push_back(n);
  const auto ratios = stats::digit_ratio_seq(*x, positions);
  const Rational d = stats::star_discrepancy(ratios);
  Table t({"first", "last", "count", "discrepancy_exact", "discrepancy_decimal"});
  t.add({r.first.get_str(), r.last.get_str(), std::to_string(ratios.size()), to_string(d), decimal12(d)});
  Artifact a;
  a.table = std::move(t);
  return a;
}

Artifact cmd_segment(const std::string& source, unsigned long i, const std::string& j_text, const std::string& block_text,
                     const RunConfig& cfg) {
  const auto x = parse_source(source);
  const auto block = stats::parse_block(block_text);
  const Integer j = parse_integer(j_text);
  const auto seg = cons::segment_bounds(i, j);
  const auto count = stats::segment_count(*x, block, i, j, cfg.enumeration_budget);
  const auto qk = stats::segment_qk(i, j, block.size(), cfg.enumeration_budget);
  Table t({"i", "j", "N", "M", "k", "count", "qk_exact", "qk_decimal", "leading", "leading_gap", "main_gap"});
  t.add({std::to_string(i), j.get_str(), seg.first.get_str(), seg.last.get_str(), std::to_string(block.size()),
         std::to_string(count), to_string(qk.exact), decimal12(qk.exact), to_string(qk.leading),
         qk.leading_gap ? decimal12(*qk.leading_gap) : "", decimal12(qk.main_gap)});
  Artifact a;
  a.table = std::move(t);
  return a;
}

Artifact cmd_verify_bounds(const std::string& lemma, unsigned long b, unsigned long n, const std::string& eps_text,
                           unsigned long k, bool timing, const RunConfig& cfg) {
  const Rational eps = parse_rational(eps_text);
  const auto started = std::chrono::steady_clock::now();
  combinatorics::BoundCheck check;
  if (lemma == "k1") {
    check = combinatorics::check_k1(b, n, eps, cfg.precision_cap);
  } else if (lemma == "bugeaud") {
    check = combinatorics::check_bugeaud(b, n, eps, cfg.precision_cap);
  } else if (lemma == "epsilonk") {
    if (b > 0xffffffffUL || n > 0xffffffffUL || k > 0xffffffffUL) throw BudgetExceeded("epsilonk: arguments too large");
    check = combinatorics::check_epsilonk(static_cast<unsigned>(b), static_cast<unsigned>(n), eps,
                                          static_cast<unsigned>(k), cfg.enumeration_budget, cfg.precision_cap);
  } else {
    throw DomainError("--lemma must be one of bugeaud, k1, epsilonk");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Table t({"lhs", "rhs_bound", "verdict", "precondition_ok", "precision_used", "seconds"});
  std::ostringstream secs;
  if (timing) {
    secs.precision(3);
    secs << std::fixed << seconds;
  }
  t.add({check.lhs.get_str(), to_string(check.rhs_lower_bound), combinatorics::to_string(check.verdict),
         check.precondition_ok ? "true" : "false", std::to_string(check.precision_used), secs.str()});
  Artifact a;
  a.table = std::move(t);
  if (check.verdict == combinatorics::Verdict::kInconclusive) a.status = kBudgetExhausted;
  return a;
}

Artifact cmd_theta_sample(std::uint64_t seed, const std::string& start_text, std::size_t count) {
  Expansion e;
  e.integer_part = 0;
  e.prefix = cons::theta_sample(seed, parse_integer(start_text), count);
  return expansion_artifact(e, false);
}

Artifact cmd_theta_check(const std::string& source, const std::string& input, const std::string& range_text,
                         const RunConfig& cfg) {
  DigitPrefix prefix;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw DomainError("cannot open --input '" + input + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("--input is not valid JSON: ") + e.what());
    }
    prefix = expansion_from_json(j).prefix;
  } else {
    if (range_text.empty()) throw DomainError("theta-check needs --positions with --source");
    const auto r = parse_range(range_text, cfg.enumeration_budget);
    prefix = parse_source(source)->window(r.first, r.size());
  }
  const auto check = cons::theta_contains(prefix);
  Table t({"start", "end", "contains", "first_violation"});
  t.add({prefix.start.get_str(), prefix.end().get_str(), check.contains ? "true" : "false",
         check.first_violation ? check.first_violation->get_str() : ""});
  ordered_json doc;
  doc["start"] = prefix.start.get_str();
  doc["end"] = prefix.end().get_str();
  doc["contains"] = check.contains;
  doc["first_violation"] = check.first_violation ? ordered_json(check.first_violation->get_str()) : ordered_json();
  Artifact a;
  a.table = std::move(t);
  a.document = std::move(doc);
  return a;
}

Artifact cmd_dim_ratio(const std::vector<unsigned long>& indices, const RunConfig& cfg) {
  Table t({"i", "K_i", "m_i", "card_I_i", "dim_ratio_lo", "dim_ratio_hi", "threshold_1_minus_2_over_ln_i",
           "precision_used"});
  for (unsigned long i : indices) {
    const auto desc = cons::i_descriptor(i, static_cast<mpfr_prec_t>(cfg.precision_cap));
    const Interval ratio = cons::dim_ratio(i);
    const Interval ln_i = log(interval_of(Integer(i), 256));
    const Interval two = interval_of(Integer(2), 256);
    const Interval threshold = sub(interval_of(Integer(1), 256), div_pos(two, ln_i));
    t.add({std::to_string(i), desc.bound.get_str(), desc.modulus.get_str(), desc.cardinality().get_str(),
           ratio.lo.to_string(15), ratio.hi.to_string(15), threshold.hi.to_string(15),
           std::to_string(desc.precision_used)});
  }
  Artifact a;
  a.table = std::move(t);
  return a;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("QCANTOR_PRECISION_CAP")) {
    try {
      cfg.precision_cap = std::stoul(env);
    } catch (const std::exception&) {
      write_error(err, "usage", "QCANTOR_PRECISION_CAP is not a positive integer");
      return kUsage;
    }
  }

  CLI::App app{"Exact Q-Cantor series toolkit: constructed Q, eta, transforms, statistics and bound checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for sampled sources");
  app.add_option("--precision-cap", cfg.precision_cap, "Bit cap for certified evaluations")->check(CLI::PositiveNumber);
  app.add_option("--lookahead-cap", cfg.lookahead_cap, "Digit lookahead cap for transformed digits")
      ->check(CLI::PositiveNumber);
  app.add_option("--enumeration-budget", cfg.enumeration_budget, "Cap on enumerated blocks or scanned positions")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output-path", cfg.output_path, "Write the artifact here instead of stdout");

  std::function<Artifact()> action;

  unsigned long max_i = 10;
  auto* params = app.add_subcommand("params", "Per-index construction parameters");
  params->add_option("--max-i", max_i, "Largest index")->check(CLI::PositiveNumber);
  params->callback([&] { action = [&] { return cmd_params(max_i); }; });

  std::string positions;
  auto* q_digits = app.add_subcommand("q-digits", "Bases of the constructed Q");
  q_digits->add_option("--positions", positions, "Range a..b")->required();
  q_digits->callback([&] { action = [&] { return cmd_q_digits(parse_range(positions, cfg.enumeration_budget)); }; });

  auto* eta_digits = app.add_subcommand("eta-digits", "Digits of eta");
  eta_digits->add_option("--positions", positions, "Range a..b")->required();
  eta_digits->callback(
      [&] { action = [&] { return cmd_eta_digits(parse_range(positions, cfg.enumeration_budget)); }; });

  std::string x_text;
  std::size_t count = 0;
  auto* expand = app.add_subcommand("expand", "Expand a rational over the constructed Q");
  expand->add_option("--x", x_text, "Rational p/q")->required();
  expand->add_option("--N", count, "Number of digits")->required();
  expand->callback([&] {
    action = [&] {
      if (count > cfg.enumeration_budget) throw BudgetExceeded("--N exceeds the enumeration budget");
      return cmd_expand(x_text, count);
    };
  });

  std::string r_text;
  std::string s_text;
  std::string source = "eta";
  auto* transform = app.add_subcommand("transform", "Digits of r x + s");
  transform->add_option("--r", r_text, "Rational r != 0")->required();
  transform->add_option("--s", s_text, "Rational s")->required();
  transform->add_option("--source", source, "eta | rational:<p/q> | theta:<seed>");
  transform->add_option("--positions", positions, "Range a..b")->required();
  transform->callback([&] {
    action = [&] {
      return cmd_transform(r_text, s_text, source, parse_range(positions, cfg.enumeration_budget), cfg);
    };
  });

  std::string block_text;
  std::vector<std::uint64_t> checkpoints;
  auto* stats_cmd = app.add_subcommand("stats", "Block counts against Q_n^(k)");
  stats_cmd->add_option("--source", source, "eta | rational:<p/q> | theta:<seed>");
  stats_cmd->add_option("--block", block_text, "Comma separated digits")->required();
  stats_cmd->add_option("--checkpoints", checkpoints, "Increasing n values")->required()->delimiter(',');
  stats_cmd->callback([&] {
    action = [&] {
      for (auto c : checkpoints) {
        if (c > cfg.enumeration_budget) throw BudgetExceeded("checkpoint exceeds the enumeration budget");
      }
      return cmd_stats(source, block_text, checkpoints);
    };
  });

  auto* discrepancy = app.add_subcommand("discrepancy", "Star discrepancy of E_n/q_n over a range");
  discrepancy->add_option("--source", source, "eta | rational:<p/q> | theta:<seed>");
  discrepancy->add_option("--positions", positions, "Range a..b")->required();
  discrepancy->callback(
      [&] { action = [&] { return cmd_discrepancy(source, parse_range(positions, cfg.enumeration_budget)); }; });

  unsigned long seg_i = 0;
  std::string seg_j = "1";
  auto* segment = app.add_subcommand("segment", "Block count and Q^(k) over one copy X_{i,j}");
  segment->add_option("--source", source, "eta | rational:<p/q> | theta:<seed>");
  segment->add_option("--i", seg_i, "Index i >= 2")->required();
  segment->add_option("--j", seg_j, "Copy 1..L_i");
  segment->add_option("--block", block_text, "Comma separated digits")->required();
  segment->callback([&] { action = [&] { return cmd_segment(source, seg_i, seg_j, block_text, cfg); }; });

  std::string lemma;
  unsigned long b = 2;
  unsigned long n = 0;
  std::string eps_text;
  unsigned long k = 1;
  bool timing = false;
  auto* verify = app.add_subcommand("verify-bounds", "Certified check of a block-counting inequality");
  verify->add_option("--lemma", lemma, "bugeaud | k1 | epsilonk")->required()->check(CLI::IsMember({"bugeaud", "k1", "epsilonk"}));
  verify->add_option("--b", b, "Base")->required();
  verify->add_option("--n", n, "Length")->required();
  verify->add_option("--eps", eps_text, "Rational eps")->required();
  verify->add_option("--k", k, "Subblock length (epsilonk)");
  verify->add_flag("--timing", timing, "Fill the seconds column (breaks byte-identical reruns)");
  verify->callback([&] { action = [&] { return cmd_verify_bounds(lemma, b, n, eps_text, k, timing, cfg); }; });

  std::string start_text;
  auto* theta_sample = app.add_subcommand("theta-sample", "Seeded window of a point of Theta");
  theta_sample->add_option("--start", start_text, "First position (default: first position of X_3)");
  theta_sample->add_option("--count", count, "Number of digits")->required();
  theta_sample->callback([&] {
    action = [&] {
      if (count > cfg.enumeration_budget) throw BudgetExceeded("--count exceeds the enumeration budget");
      const std::string start = start_text.empty() ? cons::first_sampleable_position().get_str() : start_text;
      return cmd_theta_sample(cfg.seed, start, count);
    };
  });

  std::string input;
  auto* theta_check = app.add_subcommand("theta-check", "Test a digit window for membership in Theta");
  theta_check->add_option("--source", source, "eta | rational:<p/q> | theta:<seed>");
  theta_check->add_option("--positions", positions, "Range a..b (with --source)");
  theta_check->add_option("--input", input, "Expansion JSON file instead of --source");
  theta_check->callback([&] { action = [&] { return cmd_theta_check(source, input, positions, cfg); }; });

  std::vector<unsigned long> indices;
  auto* dim = app.add_subcommand("dim-ratio", "log|I_i| / log beta_i");
  dim->add_option("--i", indices, "Indices i >= 3")->required()->delimiter(',');
  dim->callback([&] { action = [&] { return cmd_dim_ratio(indices, cfg); }; });

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("qcantor");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", e.what());
    return kUsage;
  }

  try {
    const Artifact artifact = action();
    if (cfg.output_path.empty()) {
      emit(artifact, cfg, out);
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      if (!file) throw DomainError("cannot write --output-path '" + cfg.output_path + "'");
      emit(artifact, cfg, file);
    }
    return artifact.status;
  } catch (const MalformedRational& e) {
    write_error(err, "malformed_rational", e.what());
    return kMalformedRational;
  } catch (const UnresolvedCarry& e) {
    write_error(err, "unresolved_carry", e.what());
    return kBudgetExhausted;
  } catch (const BudgetExceeded& e) {
    write_error(err, "budget_exhausted", e.what());
    return kBudgetExhausted;
  } catch (const DomainError& e) {
    write_error(err, "domain", e.what());
    return kDomainError;
  }
}

}  // namespace qcantor::cli
