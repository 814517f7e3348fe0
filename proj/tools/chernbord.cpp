// chernbord: command-line front end for the Chern class calculus.
//
// Exit codes: 0 all checks pass, 1 an identity fails, 2 usage or parse error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chernbord/chernbord.hpp"

namespace {

using namespace chernbord;
using Json = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Flags {
  int max_degree = kDefaultMaxDegree;
  std::size_t coeff_gens = kDefaultCoeffGenerators;
  std::string format = "human";
  std::size_t depth_bound = kDefaultStepBound;
  std::string strategy = "innermost";
  bool timing = false;
  unsigned jobs = 1;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class Runner {
 public:
  Runner(const Flags& flags, std::ostream& out, std::ostream& err) : f_(flags), out_(out), err_(err) {}

  bool records() const { return f_.format == "records"; }

  ParseOptions parse_options() const { return {f_.coeff_gens}; }
  NormalizeOptions normalize_options() const {
    return {f_.strategy == "outermost" ? Strategy::LeftmostOutermost : Strategy::LeftmostInnermost, f_.depth_bound};
  }

  // Runs one unit of work, mapping library errors to exit codes.
  template <class Fn>
  int guarded(const std::string& command, const std::string& input, Fn fn) {
    try {
      return fn();
    } catch (const ParseError& e) {
      return report_error(command, input, "parse", e.what(), kUsage);
    } catch (const UnknownSymbol& e) {
      return report_error(command, input, "unknown-symbol", e.what(), kUsage);
    } catch (const DimensionError& e) {
      return report_error(command, input, "dimension", e.what(), kUsage);
    } catch (const RangeError& e) {
      return report_error(command, input, "range", e.what(), kUsage);
    } catch (const TruncationError& e) {
      return report_error(command, input, "truncation", e.what(), kUsage);
    } catch (const UsageError& e) {
      return report_error(command, input, "usage", e.what(), kUsage);
    } catch (const UnsupportedRepresentation& e) {
      return report_error(command, input, "unsupported", e.what(), kUsage);
    } catch (const Error& e) {
      return report_error(command, input, "defect", e.what(), kFail);
    }
  }

  int normalize_cmd(const std::string& text) {
    return guarded("normalize", text, [&] {
      const auto r = normalize_traced(parse_expression(text, parse_options()), normalize_options());
      if (records()) {
        Json j{{"command", "normalize"}, {"input", text}, {"result", r.value.to_string()},
               {"group", r.value.group().to_string()}, {"degree", r.value.degree().to_string()}, {"steps", r.steps}};
        out_ << j.dump() << "\n";
      } else {
        out_ << r.value.to_string() << "\n";
      }
      return kPass;
    });
  }

  int torus_cmd(const std::string& text) {
    return guarded("torus", text, [&] {
      const auto x = parse_class(text, parse_options(), normalize_options());
      const auto img = torus_restrict(x, f_.max_degree);
      emit_series("torus", text, img);
      return kPass;
    });
  }

  int bundle_cmd(const std::string& text) {
    return guarded("bundle", text, [&] {
      const auto x = parse_class(text, parse_options(), normalize_options());
      emit_series("bundle", text, bundling_map(x, f_.max_degree));
      return kPass;
    });
  }

  int check_cmd(const std::string& text) {
    return guarded("check", text, [&] {
      auto [lhs, rhs] = split_equation(text);
      if (looks_like_series(lhs) && looks_like_series(rhs))
        throw UsageError("check needs a class expression on at least one side");
      if (looks_like_series(lhs)) std::swap(lhs, rhs);
      const auto x = parse_class(lhs, parse_options(), normalize_options());
      std::string mode = "class", left, right;
      bool equal = false;
      if (looks_like_series(rhs)) {
        const bool on_torus = uses_torus_variables(rhs);
        mode = on_torus ? "torus" : "bundle";
        const PowerSeries a = on_torus ? torus_restrict(x, f_.max_degree) : bundling_map(x, f_.max_degree);
        const AlgebraPtr alg = on_torus ? SeriesAlgebra::torus(x.group().blocks(), f_.max_degree)
                                        : SeriesAlgebra::chern(x.group().blocks(), f_.max_degree);
        const PowerSeries b = parse_series(rhs, alg, parse_options());
        equal = a == b;
        left = a.to_string();
        right = b.to_string();
      } else {
        const auto y = normalize(parse_typed(rhs, parse_options(), x.group()), normalize_options());
        equal = x == y;
        left = x.to_string();
        right = y.to_string();
      }
      if (records()) {
        Json j{{"command", "check"}, {"input", text}, {"mode", mode}, {"status", equal ? "pass" : "fail"},
               {"lhs", left}, {"rhs", right}};
        out_ << j.dump() << "\n";
      } else if (equal) {
        out_ << "pass (" << mode << "): " << left << "\n";
      } else {
        out_ << "FAIL (" << mode << "): " << left << " != " << right << "\n";
      }
      return equal ? kPass : kFail;
    });
  }

  int suite_cmd(const std::optional<std::string>& only, std::size_t corpus_size) {
    return guarded("suite", only.value_or(""), [&] {
      SuiteOptions o;
      o.max_degree = f_.max_degree;
      o.depth_bound = f_.depth_bound;
      o.only = only;
      o.jobs = f_.jobs;
      o.corpus_size = corpus_size;
      const SuiteReport report = run_suite(o);
      for (const auto& r : report.results) {
        if (records()) {
          Json j{{"id", r.id}, {"tag", r.tag}, {"anchor", r.anchor}, {"status", status_name(r.status)},
                 {"detail", r.detail}};
          if (f_.timing) j["elapsed_ms"] = r.elapsed_ms;
          out_ << j.dump() << "\n";
        } else {
          std::string mark = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP";
          out_ << mark << "  " << r.id << "  [" << r.anchor << "]";
          if (!r.detail.empty() && r.status != Status::Pass) out_ << "  " << r.detail;
          if (f_.timing) out_ << "  (" << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms)";
          out_ << "\n";
        }
      }
      const std::size_t pass = report.count(Status::Pass), fail = report.count(Status::Fail),
                        skip = report.count(Status::Skip);
      if (records()) {
        Json j{{"summary", true}, {"max_degree", f_.max_degree}, {"pass", pass}, {"fail", fail}, {"skip", skip}};
        out_ << j.dump() << "\n";
      } else {
        out_ << pass << " passed, " << fail << " failed, " << skip << " skipped (max degree " << f_.max_degree
             << ")\n";
      }
      return report.passed() ? kPass : kFail;
    });
  }

  int graded_cmd(const std::string& group, unsigned n) {
    return guarded("graded", group, [&] {
      const GroupDescriptor g = parse_group(group);
      const auto r = associated_graded_rank(g, n, f_.max_degree);
      const IdealDescriptor ideal(g);
      std::vector<std::string> basis;
      for (const auto& e : r.basis) basis.push_back(monomial_name(ideal, e));
      if (records()) {
        Json degrees = Json::array();
        for (const auto& d : r.degrees)
          degrees.push_back({{"degree", d.degree}, {"rank", d.rank}, {"monomials", d.monomials},
                             {"independent", d.independent}, {"saturated", d.saturated}});
        Json j{{"command", "graded"}, {"group", g.to_string()}, {"n", n}, {"max_degree", f_.max_degree},
               {"rank", r.rank}, {"full_count", r.full_count}, {"complete", r.complete},
               {"certified", r.certified()}, {"basis", basis}, {"degrees", degrees}};
        out_ << j.dump() << "\n";
      } else {
        out_ << "I^" << n << "/I^" << n + 1 << " for " << g.to_string() << ", max degree " << f_.max_degree << "\n";
        out_ << "degree  rank  monomials  independent  saturated\n";
        for (const auto& d : r.degrees)
          out_ << std::setw(6) << d.degree << std::setw(6) << d.rank << std::setw(11) << d.monomials << std::setw(13)
               << (d.independent ? "yes" : "no") << std::setw(11) << (d.saturated ? "yes" : "no") << "\n";
        out_ << "rank " << r.rank;
        if (!r.complete) out_ << " (truncated; " << r.full_count << " monomials without truncation)";
        out_ << "\nbasis:";
        for (const auto& b : basis) out_ << " " << b;
        out_ << "\ncertified: " << (r.certified() ? "yes" : "no") << "\n";
      }
      return r.certified() ? kPass : kFail;
    });
  }

  int koszul_cmd(const std::string& group) {
    return guarded("koszul", group, [&] {
      const GroupDescriptor g = parse_group(group);
      const auto r = koszul_local_homology(g, f_.max_degree);
      if (records()) {
        Json powers = Json::array();
        for (const auto& p : r.powers) {
          Json cells = Json::array();
          for (const auto& c : p.cells)
            cells.push_back({{"s", c.s}, {"t", c.t}, {"rank", c.rank}, {"torsion_free", c.torsion_free}});
          powers.push_back({{"power", p.power}, {"cells", cells}});
        }
        Json j{{"command", "koszul"}, {"group", g.to_string()}, {"max_degree", f_.max_degree},
               {"guard_band", r.guard_band}, {"stable_power", r.stable_power}, {"local_h0", r.local_h0},
               {"monomials", r.monomials}, {"higher_vanish", r.higher_vanish()}, {"passed", r.passed()},
               {"axiom", r.axiom}, {"powers", powers}};
        out_ << j.dump() << "\n";
      } else {
        out_ << "Koszul local homology for " << g.to_string() << ", max degree " << f_.max_degree
             << ", guard band t <= " << r.guard_band << "\n";
        for (const auto& p : r.powers) {
          out_ << "powers g^" << p.power << ":";
          unsigned s = ~0U;
          for (const auto& c : p.cells) {
            if (c.s != s) {
              s = c.s;
              out_ << "\n  H_" << s << ":";
            }
            out_ << " " << c.rank << (c.torsion_free ? "" : "*");
          }
          out_ << "\n";
        }
        out_ << "H^I_0 ranks:";
        for (auto v : r.local_h0) out_ << " " << v;
        out_ << "\nmonomials:  ";
        for (auto v : r.monomials) out_ << " " << v;
        out_ << "\nhigher homology vanishes: " << (r.higher_vanish() ? "yes" : "no") << "\n";
        out_ << "note: " << r.axiom << "\n";
      }
      return r.passed() ? kPass : kFail;
    });
  }

  int regularity_cmd(const std::string& group) {
    return guarded("regularity", group, [&] {
      const GroupDescriptor g = parse_group(group);
      const auto r = regularity_check(g, f_.max_degree);
      if (records()) {
        Json steps = Json::array();
        for (const auto& s : r.steps) {
          Json degrees = Json::array();
          for (const auto& d : s.degrees)
            degrees.push_back({{"degree", d.degree}, {"quotient_rank", d.quotient_rank}, {"injective", d.injective},
                               {"torsion_free", d.torsion_free}});
          steps.push_back({{"generator", s.generator.name()}, {"band", s.band}, {"passed", s.passed()},
                           {"degrees", degrees}});
        }
        Json collapses = Json::array();
        for (const auto& c : r.collapses)
          collapses.push_back({{"k", c.k}, {"quotient_ranks", c.quotient_ranks}, {"target_ranks", c.target_ranks},
                               {"restriction_matches", c.restriction_matches}, {"passed", c.passed()}});
        Json j{{"command", "regularity"}, {"group", g.to_string()}, {"max_degree", f_.max_degree},
               {"guard_band", r.guard_band}, {"passed", r.passed()}, {"axiom", r.axiom},
               {"final_quotient_ranks", r.final_quotient_ranks}, {"steps", steps}, {"collapses", collapses}};
        out_ << j.dump() << "\n";
      } else {
        out_ << "regularity of the Chern sequence for " << g.to_string() << ", max degree " << f_.max_degree
             << ", guard band t <= " << r.guard_band << "\n";
        for (const auto& s : r.steps) {
          out_ << "  " << std::left << std::setw(7) << s.generator.name() << std::right << " t <= " << std::setw(2)
               << s.band << "  quotient ranks:";
          for (const auto& d : s.degrees) out_ << " " << d.quotient_rank;
          out_ << "  " << (s.passed() ? "injective" : "NOT injective") << "\n";
        }
        out_ << "  final quotient ranks:";
        for (auto v : r.final_quotient_ranks) out_ << " " << v;
        out_ << "\n";
        for (const auto& c : r.collapses)
          out_ << "  quotient to U(" << c.k << "): " << (c.passed() ? "matches" : "MISMATCH") << "\n";
        out_ << "note: " << r.axiom << "\n";
      }
      return r.passed() ? kPass : kFail;
    });
  }

  int batch_cmd(std::istream& in, std::size_t corpus_size) {
    int worst = kPass;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const std::string body = line.substr(first);
      worst = std::max(worst, dispatch_line(body, line_no, corpus_size));
    }
    return worst;
  }

  int report_error(const std::string& command, const std::string& input, const std::string& kind,
                   const std::string& message, int code) {
    if (records()) {
      Json j{{"command", command}, {"input", input}, {"status", "error"}, {"error", kind}, {"message", message}};
      out_ << j.dump() << "\n";
    }
    err_ << "error: " << message << "\n";
    return code;
  }

 private:
  static bool uses_torus_variables(const std::string& text) {
    std::istringstream s(text);
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      const bool starts = i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
      if (starts && text[i] == 'x' && (std::isdigit(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_'))
        return true;
    }
    return false;
  }

  void emit_series(const std::string& command, const std::string& input, const PowerSeries& s) {
    if (records()) {
      Json j{{"command", command}, {"input", input}, {"result", s.to_string()}, {"algebra", s.algebra().describe()}};
      out_ << j.dump() << "\n";
    } else {
      out_ << s.to_string() << "\n";
    }
  }

  int dispatch_line(const std::string& body, std::size_t line_no, std::size_t corpus_size) {
    const auto space = body.find_first_of(" \t");
    const std::string cmd = body.substr(0, space);
    const std::string rest = space == std::string::npos ? "" : body.substr(space + 1);
    if (cmd == "normalize") return normalize_cmd(rest);
    if (cmd == "torus") return torus_cmd(rest);
    if (cmd == "bundle") return bundle_cmd(rest);
    if (cmd == "check") return check_cmd(rest);

    std::istringstream words(rest);
    std::vector<std::string> args{std::istream_iterator<std::string>(words), {}};
    auto value = [&](const std::string& name) -> std::optional<std::string> {
      for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == name) return args[i + 1];
      return std::nullopt;
    };
    return guarded(cmd, body, [&]() -> int {
      for (std::size_t i = 0; i < args.size(); i += 2)
        if (args[i] != "--group" && args[i] != "--n" && args[i] != "--only")
          throw UsageError("line " + std::to_string(line_no) + ": unknown argument '" + args[i] + "'");
      if (cmd == "suite") return suite_cmd(value("--only"), corpus_size);
      const auto group = value("--group");
      if (!group) throw UsageError("line " + std::to_string(line_no) + ": " + cmd + " needs --group");
      if (cmd == "graded") {
        const auto n = value("--n");
        if (!n || n->find_first_not_of("0123456789") != std::string::npos || n->size() > 3)
          throw UsageError("line " + std::to_string(line_no) + ": graded needs --n <non-negative integer>");
        return graded_cmd(*group, static_cast<unsigned>(std::stoul(*n)));
      }
      if (cmd == "koszul") return koszul_cmd(*group);
      if (cmd == "regularity") return regularity_cmd(*group);
      throw UsageError("line " + std::to_string(line_no) + ": unknown command '" + cmd + "'");
    });
  }

  Flags f_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

// Runs `fn` once for the joined positional text, or once per line of --input.
template <class Fn>
int for_each_input(const std::vector<std::string>& positional, const std::string& input_file, Fn fn,
                   Runner& runner) {
  if (!input_file.empty()) {
    std::ifstream in(input_file);
    if (!in) return runner.report_error("input", input_file, "usage", "cannot read " + input_file, kUsage);
    int worst = kPass;
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      worst = std::max(worst, fn(line.substr(first)));
    }
    return worst;
  }
  if (positional.empty()) return runner.report_error("input", "", "usage", "missing expression", kUsage);
  return fn(join(positional));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern classes in equivariant bordism: transfer calculus, completed model, identity suite"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--max-degree", flags.max_degree, "truncation bound D (even, >= 2)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            try {
              const int v = std::stoi(s);
              if (v >= 2 && v % 2 == 0 && s.find_first_not_of("0123456789") == std::string::npos) return {};
            } catch (const std::exception&) {
            }
            return "--max-degree must be an even integer >= 2";
          },
          "EVEN>=2"));
  app.add_option("--coeff-gens", flags.coeff_gens, "number of coefficient generators a1..aN")
      ->check(CLI::Range(1, 64));
  app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"human", "records"}));
  app.add_option("--depth-bound", flags.depth_bound, "rewrite step bound")->check(CLI::Range(1, 100000000));
  app.add_option("--strategy", flags.strategy, "rewrite strategy")->check(CLI::IsMember({"innermost", "outermost"}));
  app.add_flag("--timing", flags.timing, "report elapsed time per suite entry");
  app.add_option("--jobs", flags.jobs, "suite entries run concurrently")->check(CLI::Range(1, 64));

  std::vector<std::string> expr;
  std::string input_file;
  auto add_expr_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("expression", expr, "expression text")->expected(0, -1);
    sub->add_option("--input", input_file, "file with one input per line")->check(CLI::ExistingFile);
    return sub;
  };
  auto* normalize_sub = add_expr_command("normalize", "print the canonical form of a class expression");
  auto* torus_sub = add_expr_command("torus", "restrict a class to the maximal torus");
  auto* bundle_sub = add_expr_command("bundle", "image of a class in the Chern power series algebra");
  auto* check_sub = add_expr_command("check", "check an identity A = B between classes or a class and a series");

  std::optional<std::string> only;
  std::size_t corpus_size = 1000;
  auto* suite_sub = app.add_subcommand("suite", "run the identity suite");
  suite_sub->add_option("--only", only, "run only the entries with this tag");
  suite_sub->add_option("--corpus", corpus_size, "size of the random corpus for engine checks")
      ->check(CLI::Range(0, 1000000));

  std::string group;
  unsigned n = 0;
  auto* graded_sub = app.add_subcommand("graded", "rank of I^n/I^(n+1) with a basis certificate");
  graded_sub->add_option("--group", group, "group such as U(2,1)")->required();
  graded_sub->add_option("--n", n, "ideal power")->required();
  auto* koszul_sub = app.add_subcommand("koszul", "Koszul local homology of the Chern sequence");
  koszul_sub->add_option("--group", group, "group such as U(2)")->required();
  auto* regularity_sub = app.add_subcommand("regularity", "regularity of the Chern sequence");
  regularity_sub->add_option("--group", group, "group such as U(2)")->required();

  std::string batch_file;
  auto* batch_sub = app.add_subcommand("batch", "run one command per line of a file");
  batch_sub->add_option("file", batch_file, "command file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Runner runner(flags, std::cout, std::cerr);
  auto each = [&](auto fn) { return for_each_input(expr, input_file, fn, runner); };
  if (normalize_sub->parsed()) return each([&](const std::string& s) { return runner.normalize_cmd(s); });
  if (torus_sub->parsed()) return each([&](const std::string& s) { return runner.torus_cmd(s); });
  if (bundle_sub->parsed()) return each([&](const std::string& s) { return runner.bundle_cmd(s); });
  if (check_sub->parsed()) return each([&](const std::string& s) { return runner.check_cmd(s); });
  if (suite_sub->parsed()) return runner.suite_cmd(only, corpus_size);
  if (graded_sub->parsed()) return runner.graded_cmd(group, n);
  if (koszul_sub->parsed()) return runner.koszul_cmd(group);
  if (regularity_sub->parsed()) return runner.regularity_cmd(group);
  if (batch_sub->parsed()) {
    std::ifstream in(batch_file);
    return runner.batch_cmd(in, corpus_size);
  }
  return kUsage;
}
