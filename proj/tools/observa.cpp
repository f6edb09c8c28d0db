// observa: command line front end for the state observability toolkit.
//
// Subcommands: analyze, op, min, eq, enum, witness, suite, gen-hierarchy.
// Exit codes: 0 ok, 1 usage, 2 input format error, 3 bounds exhausted,
// 4 suite assertion failure. '-' names stdin wherever a DFA file is
// accepted; output is plain deterministic text.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "observa/observa.hpp"

namespace {

using namespace observa;

struct InputSpec {
  std::string path;    // file path or "-" for stdin
  std::string regex;   // alternative to a file
  std::string sigma;   // alphabet for the regex form
  bool complete_partial = false;
  std::string embed;   // widen into this alphabet after loading
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dfa load_dfa(const InputSpec& spec) {
  Dfa d;
  if (!spec.regex.empty()) {
    if (spec.sigma.empty())
      throw std::invalid_argument("a regex input needs -a/--alphabet");
    d = compile(spec.regex, Alphabet::parse(spec.sigma));
  } else {
    DfaParseOptions opts;
    opts.complete_partial = spec.complete_partial;
    d = parse_dfa(read_all(spec.path), opts);
  }
  if (!spec.embed.empty()) d = checked(complete(d, Alphabet::parse(spec.embed)));
  return d;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + out_path);
  out << text;
}

Dfa apply_op(const std::string& name, const std::vector<Dfa>& in,
             const std::optional<Homomorphism>& hom, bool no_min) {
  const auto need = [&](std::size_t arity, bool needs_hom) {
    if (in.size() != arity)
      throw CLI::ValidationError("op " + name + " takes " + std::to_string(arity) +
                                 " automat" + (arity == 1 ? "on" : "a"));
    if (needs_hom != hom.has_value())
      throw CLI::ValidationError(needs_hom ? "op " + name + " needs -m <hom-file>"
                                           : "op " + name + " takes no homomorphism");
  };
  if (name == "union") { need(2, false); return no_min ? raw::union_lang(in[0], in[1]) : union_lang(in[0], in[1]); }
  if (name == "intersect") { need(2, false); return no_min ? raw::intersection(in[0], in[1]) : intersection(in[0], in[1]); }
  if (name == "complement") { need(1, false); return no_min ? raw::complement(in[0]) : complement(in[0]); }
  if (name == "concat") { need(2, false); return no_min ? raw::concatenate(in[0], in[1]) : concatenate(in[0], in[1]); }
  if (name == "plus") { need(1, false); return no_min ? raw::kleene_plus(in[0]) : kleene_plus(in[0]); }
  if (name == "star") { need(1, false); return no_min ? raw::kleene_star(in[0]) : kleene_star(in[0]); }
  if (name == "hom") { need(1, true); return no_min ? raw::hom_image(in[0], *hom) : hom_image(in[0], *hom); }
  if (name == "invhom") { need(1, true); return no_min ? raw::hom_inverse(in[0], *hom) : hom_inverse(in[0], *hom); }
  if (name == "mirror") { need(1, false); return no_min ? raw::mirror(in[0]) : mirror(in[0]); }
  if (name == "lquot") { need(2, false); return no_min ? raw::left_quotient(in[0], in[1]) : left_quotient(in[0], in[1]); }
  if (name == "rquot") { need(2, false); return no_min ? raw::right_quotient(in[0], in[1]) : right_quotient(in[0], in[1]); }
  throw CLI::ValidationError("unknown op: " + name +
                             " (union|intersect|complement|concat|plus|star|hom|invhom|"
                             "mirror|lquot|rquot)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state observability toolkit for deterministic finite automata"};
  app.require_subcommand(1);

  // analyze
  InputSpec an_in;
  bool an_json = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "classify states and report so indices");
  analyze_cmd->add_option("input", an_in.path, "DFA file ('-' for stdin)");
  analyze_cmd->add_option("-e,--regex", an_in.regex, "regex instead of a DFA file");
  analyze_cmd->add_option("-a,--alphabet", an_in.sigma, "alphabet for --regex, e.g. a,b");
  analyze_cmd->add_flag("--complete", an_in.complete_partial, "complete a partial table");
  analyze_cmd->add_option("--embed", an_in.embed, "widen into this alphabet after loading");
  analyze_cmd->add_flag("--json", an_json, "JSON report");

  // op
  std::string op_name, op_a, op_b, op_hom_path, op_out;
  InputSpec op_in;
  bool op_no_min = false;
  auto* op_cmd = app.add_subcommand("op", "apply a language operation");
  op_cmd->add_option("name", op_name, "operation")->required();
  op_cmd->add_option("A", op_a, "first automaton ('-' for stdin)");
  op_cmd->add_option("B", op_b, "second automaton");
  op_cmd->add_option("-e,--regex", op_in.regex, "regex for the first automaton");
  op_cmd->add_option("-a,--alphabet", op_in.sigma, "alphabet for --regex");
  op_cmd->add_option("-m,--hom", op_hom_path, "homomorphism file for hom/invhom");
  op_cmd->add_option("-o,--out", op_out, "output file (default stdout)");
  op_cmd->add_flag("--complete", op_in.complete_partial, "complete partial tables");
  op_cmd->add_option("--embed", op_in.embed, "widen inputs into this alphabet");
  op_cmd->add_flag("--no-min", op_no_min, "skip the final minimization");

  // min
  InputSpec min_in;
  std::string min_out;
  auto* min_cmd = app.add_subcommand("min", "minimize an automaton");
  min_cmd->add_option("input", min_in.path, "DFA file ('-' for stdin)");
  min_cmd->add_option("-e,--regex", min_in.regex, "regex instead of a DFA file");
  min_cmd->add_option("-a,--alphabet", min_in.sigma, "alphabet for --regex");
  min_cmd->add_flag("--complete", min_in.complete_partial, "complete a partial table");
  min_cmd->add_option("--embed", min_in.embed, "widen into this alphabet");
  min_cmd->add_option("-o,--out", min_out, "output file (default stdout)");

  // eq
  std::string eq_a, eq_b;
  InputSpec eq_in;
  auto* eq_cmd = app.add_subcommand("eq", "decide language equality");
  eq_cmd->add_option("A", eq_a, "first automaton ('-' for stdin)");
  eq_cmd->add_option("B", eq_b, "second automaton")->required();
  eq_cmd->add_option("-e,--regex", eq_in.regex, "regex for the first automaton");
  eq_cmd->add_option("-a,--alphabet", eq_in.sigma, "alphabet for --regex");
  eq_cmd->add_flag("--complete", eq_in.complete_partial, "complete partial tables");
  eq_cmd->add_option("--embed", eq_in.embed, "widen inputs into this alphabet");

  // enum
  std::size_t enum_n = 0;
  std::string enum_sigma = "a,b";
  bool enum_count_only = false;
  auto* enum_cmd = app.add_subcommand("enum", "enumerate small DFAs up to isomorphism");
  enum_cmd->add_option("-n,--max-states", enum_n, "state bound")->required();
  enum_cmd->add_option("-a,--alphabet", enum_sigma, "alphabet (default a,b)");
  enum_cmd->add_flag("--count", enum_count_only, "print only the count");

  // witness
  std::string wit_claim, wit_sigma = "a,b", wit_out_dir;
  std::size_t wit_max_states = 0, wit_max_image = 0;
  unsigned wit_jobs = 0;
  auto* wit_cmd = app.add_subcommand("witness", "search for a non-closure counterexample");
  wit_cmd->add_option("claim", wit_claim, "claim id, e.g. T1-hom or T2-plus")->required();
  wit_cmd->add_option("--max-states", wit_max_states, "state bound (default per claim)");
  wit_cmd->add_option("--sigma", wit_sigma, "search alphabet (default a,b)");
  wit_cmd->add_option("--max-image", wit_max_image, "image length bound (hom claims)");
  wit_cmd->add_option("--out", wit_out_dir, "directory for witness files");
  wit_cmd->add_option("--jobs", wit_jobs, "worker threads (default: hardware)");

  // suite
  long suite_budget = 120;
  bool suite_json = false;
  unsigned suite_jobs = 0;
  auto* suite_cmd = app.add_subcommand("suite", "run the verification suite");
  suite_cmd->add_option("--budget-seconds", suite_budget, "search scale budget (default 120)");
  suite_cmd->add_flag("--json", suite_json, "JSON report");
  suite_cmd->add_option("--jobs", suite_jobs, "worker threads (default: hardware)");

  // gen-hierarchy
  std::size_t hier_k = 0;
  std::string hier_out;
  auto* hier_cmd = app.add_subcommand("gen-hierarchy", "emit a DFA with so_index exactly k");
  hier_cmd->add_option("-k", hier_k, "target semi-observability index")->required();
  hier_cmd->add_option("-o,--out", hier_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);

    if (analyze_cmd->parsed()) {
      if (an_in.path.empty() && an_in.regex.empty())
        throw CLI::ValidationError("analyze needs a DFA file, '-', or -e <regex>");
      const Dfa d = load_dfa(an_in);
      const ObservabilityReport report = analyze(d);
      std::cout << (an_json ? render_report_json(report) : render_report(report));
      return 0;
    }

    if (op_cmd->parsed()) {
      std::vector<Dfa> in;
      InputSpec first = op_in;
      first.path = op_a;
      if (!first.path.empty() || !first.regex.empty()) in.push_back(load_dfa(first));
      if (!op_b.empty()) {
        InputSpec second;
        second.path = op_b;
        second.complete_partial = op_in.complete_partial;
        second.embed = op_in.embed;
        in.push_back(load_dfa(second));
      }
      std::optional<Homomorphism> hom;
      if (!op_hom_path.empty()) hom = parse_homomorphism(read_all(op_hom_path));
      write_output(format_dfa(apply_op(op_name, in, hom, op_no_min)), op_out);
      return 0;
    }

    if (min_cmd->parsed()) {
      if (min_in.path.empty() && min_in.regex.empty())
        throw CLI::ValidationError("min needs a DFA file, '-', or -e <regex>");
      min_in.path.swap(min_in.path);
      write_output(format_dfa(minimize(load_dfa(min_in))), min_out);
      return 0;
    }

    if (eq_cmd->parsed()) {
      if (eq_a.empty() && eq_in.regex.empty())
        throw CLI::ValidationError("eq needs two automata");
      InputSpec first = eq_in;
      first.path = eq_a;
      InputSpec second;
      second.path = eq_b;
      second.complete_partial = eq_in.complete_partial;
      second.embed = eq_in.embed;
      const bool same = equivalent(load_dfa(first), load_dfa(second));
      std::cout << "equivalent: " << (same ? "true" : "false") << "\n";
      return 0;
    }

    if (enum_cmd->parsed()) {
      const Alphabet sigma = Alphabet::parse(enum_sigma);
      std::size_t count = 0;
      std::string out;
      for_each_dfa(enum_n, sigma, [&](const Dfa& d) {
        if (!enum_count_only) {
          out += "# dfa " + std::to_string(count) + "\n";
          out += format_dfa(d);
          out += "\n";
        }
        ++count;
        return true;
      });
      if (enum_count_only)
        std::cout << "count: " << count << "\n";
      else
        std::cout << out;
      return 0;
    }

    if (wit_cmd->parsed()) {
      WitnessTask task(parse_claim(wit_claim).id);
      if (wit_max_states) task.bounds.max_states = wit_max_states;
      if (wit_max_image) task.bounds.max_image_len = wit_max_image;
      task.bounds.sigma = Alphabet::parse(wit_sigma);
      const Witness w = find_witness(task, wit_jobs);
      const std::string report = render_witness(w, task.bounds);
      std::cout << report;
      if (!wit_out_dir.empty()) {
        std::filesystem::create_directories(wit_out_dir);
        const auto dir = std::filesystem::path(wit_out_dir);
        std::ofstream(dir / "witness.txt") << report;
        for (std::size_t i = 0; i < w.inputs.size(); ++i)
          std::ofstream(dir / ("input" + std::to_string(i + 1) + ".dfa"))
              << format_dfa(w.inputs[i]);
        if (w.hom) std::ofstream(dir / "hom.txt") << format_homomorphism(*w.hom);
        std::ofstream(dir / "result.dfa") << format_dfa(w.result);
      }
      return 0;
    }

    if (suite_cmd->parsed()) {
      SuiteOptions opts;
      opts.budget_seconds = suite_budget;
      opts.jobs = suite_jobs;
      const SuiteReport report = run_suite(opts);
      std::cout << (suite_json ? render_suite_json(report) : render_suite(report));
      return report.ok() ? 0 : 4;
    }

    if (hier_cmd->parsed()) {
      if (hier_k > 20) throw CLI::ValidationError("-k is limited to 20");
      write_output(format_dfa(hierarchy_witness(hier_k)), hier_out);
      return 0;
    }

    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const BoundsExhausted& e) {
    std::cerr << "bounds exhausted: " << e.what() << "\n";
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const RegexError& e) {
    std::cerr << "regex error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
