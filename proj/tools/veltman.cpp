// Command-line front-end.  Exit codes: 0 claim confirmed, 1 claim refuted
// or check failed, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "veltman/analysis.hpp"
#include "veltman/fixedpoint.hpp"
#include "veltman/formula.hpp"
#include "veltman/frame.hpp"
#include "veltman/logic.hpp"
#include "veltman/models.hpp"
#include "veltman/parser.hpp"
#include "veltman/search.hpp"
#include "veltman/semantics.hpp"
#include "veltman/suite.hpp"

namespace {

using namespace veltman;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Formula parse_or_throw(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw UsageError("cannot parse \"" + text + "\": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw UsageError("error writing " + path);
}

void echo_sampling(const Report& rep) {
  if (!rep.exhaustive) {
    std::cout << "note: valuation spaces over budget were sampled, seed " << rep.seed << "\n";
  }
}

int do_parse(const std::string& text) {
  Formula f = parse_or_throw(text);
  std::cout << render(f) << "\n";
  std::vector<std::string> vars = variables(f);
  if (!vars.empty()) {
    std::cout << "variables:";
    for (const std::string& v : vars) std::cout << " " << v;
    std::cout << "\n";
  }
  return 0;
}

int do_check_model(const std::string& modelFile, const std::string& formulaText,
                   const std::string& world) {
  Model m = load_model(modelFile);
  Formula f = parse_or_throw(formulaText);
  if (!world.empty()) {
    bool h = holds(m, world, f);
    std::cout << (h ? "holds" : "fails") << " at " << world << "\n";
    return h ? 0 : 1;
  }
  WorldMask mask = truth_mask(m, f);
  std::cout << "true at:";
  for (int w = 0; w < m.frame.size(); ++w) {
    if (mask >> w & 1) std::cout << " " << m.frame.worlds[w];
  }
  std::cout << "\n";
  bool all = mask == m.frame.all_worlds();
  std::cout << (all ? "valid in the model" : "not valid in the model") << "\n";
  return all ? 0 : 1;
}

int do_check_frame(const std::string& frameFile, const std::string& logicName) {
  Frame fr = load_frame(frameFile);
  const Logic& l = lookup_logic(logicName);
  bool ok = true;
  for (FrameProperty p : l.properties) {
    bool pass = check_frame_property(fr, p);
    ok = ok && pass;
    const char* name = p == FrameProperty::J1       ? "J1"
                       : p == FrameProperty::J2plus ? "J2+"
                       : p == FrameProperty::J4plus ? "J4+"
                                                    : "J5";
    std::cout << name << " condition: " << (pass ? "holds" : "fails") << "\n";
  }
  std::cout << "frame " << (ok ? "belongs" : "does not belong") << " to the " << l.name
            << " class\n";
  return ok ? 0 : 1;
}

int do_fixpoint(const std::string& logicName, const std::string& formulaText,
                const std::string& varName, bool verify, int maxSize) {
  const Logic& l = lookup_logic(logicName);
  Formula a = parse_or_throw(formulaText);
  FixedPointResult res;
  try {
    res = fixed_point(l, a, varName);
  } catch (const FixedPointError& e) {
    throw UsageError(e.what());
  }
  std::cout << "fixed point: " << render(res.fixpoint) << "\n";
  if (res.trace.size() > 1) {
    std::cout << "subproblems:\n";
    for (const auto& [sub, rule] : res.trace) {
      std::cout << "  " << render(sub) << "   [" << rule << "]\n";
    }
  }
  if (!verify) return 0;
  SearchBudget budget;
  budget.max_worlds = maxSize;
  Report rep = verify_fixed_point(l, a, varName, res.fixpoint, budget);
  echo_sampling(rep);
  if (rep.refuted()) {
    std::cout << "refuted at world " << rep.witness->world << " of\n"
              << model_to_json(rep.witness->model) << "\n";
    return 1;
  }
  std::cout << "verified up to " << rep.bound << " worlds (" << rep.frames_checked
            << " frames)\n";
  return 0;
}

int do_refute(const std::string& logicName, const std::string& formulaText, int maxSize,
              const std::string& dotFile, std::uint64_t seed) {
  const Logic& l = lookup_logic(logicName);
  Formula f = parse_or_throw(formulaText);
  SearchBudget budget;
  budget.max_worlds = maxSize;
  budget.sampling_seed = seed;
  Report rep = find_countermodel(l, f, budget);
  echo_sampling(rep);
  if (!rep.refuted()) {
    std::cout << "no countermodel within " << rep.bound << " worlds (" << rep.frames_checked
              << " frames of the " << l.name << " class)\n";
    return 0;
  }
  std::cout << "countermodel found, fails at world " << rep.witness->world << "\n"
            << model_to_json(rep.witness->model) << "\n";
  if (!dotFile.empty()) {
    write_file(dotFile, to_dot(rep.witness->model));
    std::cout << "wrote " << dotFile << "\n";
  }
  return 1;
}

Family family_of(int figure) {
  switch (figure) {
    case 2: return Family::Figure2;
    case 3: return Family::Figure3;
    case 4: return Family::Figure4;
    case 5: return Family::Figure5;
  }
  throw UsageError("--figure takes 2, 3, 4 or 5");
}

int check_family(Family fam, int n) {
  Model m = build_family(fam, n);
  const Logic& l = family_logic(fam);
  bool ok = true;
  for (FrameProperty p : l.properties) {
    bool pass = check_frame_property(m.frame, p);
    ok = ok && pass;
    const char* name = p == FrameProperty::J1       ? "J1"
                       : p == FrameProperty::J2plus ? "J2+"
                       : p == FrameProperty::J4plus ? "J4+"
                                                    : "J5";
    std::cout << name << " condition: " << (pass ? "holds" : "fails") << "\n";
  }
  if (fam == Family::Figure4) {
    // this family lives outside the J4+ class on purpose
    bool fails = !check_frame_property(m.frame, FrameProperty::J4plus);
    ok = ok && fails;
    std::cout << "J4+ condition: " << (fails ? "fails (as intended)" : "unexpectedly holds")
              << "\n";
  }
  if (fam == Family::Figure2) {
    Formula p = var("p"), q = var("q");
    struct {
      const char* label;
      Formula f;
    } conjuncts[] = {
        {"p <-> (true |> ~p), at w and all its successors", boxdot(iff(p, rhd(top(), neg(p))))},
        {"q <-> (true |> ~q), at w and all its successors", boxdot(iff(q, rhd(top(), neg(q))))},
        {"~(p <-> q), at w", neg(iff(p, q))},
    };
    for (const auto& c : conjuncts) {
      bool h = holds(m, "w", c.f);
      ok = ok && h;
      std::cout << c.label << ": " << (h ? "holds" : "FAILS") << "\n";
    }
    std::cout << "so two distinct fixed points of true |> ~p coexist in this model\n";
  }
  std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok ? 0 : 1;
}

int scan_family(Family fam, int n, int depth) {
  FpShape shape = fam == Family::Figure5 ? FpShape::TopRhdNotA : FpShape::ARhdQ;
  ScanReport rep = no_fixed_point_scan(fam, shape, n, depth);
  const char* equation = shape == FpShape::ARhdQ ? "A <-> A |> q" : "A <-> true |> ~A";
  std::cout << "equation " << equation << ", candidates of depth <= " << rep.max_depth
            << ": " << rep.candidates.size() << " (" << rep.raw_candidates
            << " before deduplication)\n";
  int stable = 0;
  for (const ScanCandidate& c : rep.candidates) {
    if (c.tail_stable) ++stable;
    std::cout << "  " << render(c.a) << "\n    ";
    if (c.fail_world) {
      std::cout << "fails at " << *c.fail_world << "\n";
    } else {
      std::cout << "NO REFUTING WORLD up to index " << rep.size - 1 << "\n";
    }
  }
  std::cout << stable << "/" << rep.candidates.size()
            << " candidates have settled truth values on the tail window\n";
  if (rep.survivors == 0) {
    std::cout << "every candidate fails the equation somewhere\n";
    return 0;
  }
  std::cout << rep.survivors << " candidate(s) survived; enlarge --n or --depth\n";
  return 1;
}

int do_paper(int figure, int n, bool check, bool scan, int depth, const std::string& outFile,
             const std::string& dotFile) {
  Family fam = family_of(figure);
  if (depth <= 0) depth = fam == Family::Figure5 ? 3 : 2;
  if (check) return check_family(fam, n);
  if (scan) return scan_family(fam, n, depth);
  Model m = build_family(fam, n);
  std::string json = model_to_json(m);
  if (!outFile.empty()) {
    write_file(outFile, json);
    std::cout << "wrote " << outFile << "\n";
  } else {
    std::cout << json << "\n";
  }
  if (!dotFile.empty()) {
    write_file(dotFile, to_dot(m));
    std::cout << "wrote " << dotFile << "\n";
  }
  return 0;
}

int do_suite(const std::vector<std::string>& names, int maxSize, std::uint64_t seed) {
  SearchBudget budget;
  budget.max_worlds = maxSize;
  budget.sampling_seed = seed;
  std::cout << "bound " << maxSize << " worlds, seed " << seed << "\n";
  std::vector<SuiteResult> results;
  try {
    results = run_suite(names, budget);
  } catch (const UnknownSuiteEntryError& e) {
    std::string known;
    for (const std::string& n : suite_entry_names()) known += "  " + n + "\n";
    throw UsageError(std::string(e.what()) + "\nregistered entries:\n" + known);
  }
  std::cout << format_suite_results(results);
  int passed = 0;
  for (const SuiteResult& r : results) passed += r.passed;
  std::cout << passed << "/" << results.size() << " entries passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded semantic toolkit for interpretability logics"};
  app.require_subcommand(1);

  auto* cmdParse = app.add_subcommand("parse", "Parse a formula and print its core form");
  std::string formulaText;
  cmdParse->add_option("formula", formulaText, "formula in surface syntax")->required();

  auto* cmdModel = app.add_subcommand("check-model", "Evaluate a formula in a model file");
  std::string modelFile, world;
  cmdModel->add_option("--model", modelFile, "model file (JSON)")->required();
  cmdModel->add_option("--formula", formulaText, "formula to evaluate")->required();
  cmdModel->add_option("--world", world, "check at this world only");

  auto* cmdFrame = app.add_subcommand("check-frame", "Test a frame against a logic's class");
  std::string frameFile, logicName;
  cmdFrame->add_option("--frame", frameFile, "frame file (JSON)")->required();
  cmdFrame->add_option("--logic", logicName, "logic name, e.g. IL-(J2+,J5)")->required();

  auto* cmdFix = app.add_subcommand("fixpoint", "Compute an explicit fixed point");
  std::string varName;
  bool verify = false;
  int maxSize = 4;
  cmdFix->add_option("--logic", logicName, "logic name")->required();
  cmdFix->add_option("--formula", formulaText, "formula A, modalized in the variable")
      ->required();
  cmdFix->add_option("--var", varName, "fixed-point variable")->required();
  cmdFix->add_flag("--verify", verify, "search for a countermodel to the defining equation");
  cmdFix->add_option("--max-size", maxSize, "verification bound on worlds")
      ->check(CLI::Range(1, 31));

  auto* cmdRefute = app.add_subcommand("refute", "Search for a countermodel");
  std::string dotFile;
  std::uint64_t seed = SearchBudget{}.sampling_seed;
  cmdRefute->add_option("--logic", logicName, "logic name")->required();
  cmdRefute->add_option("--formula", formulaText, "formula to refute")->required();
  cmdRefute->add_option("--max-size", maxSize, "bound on worlds")->check(CLI::Range(1, 31));
  cmdRefute->add_option("--dot", dotFile, "write the witness in DOT format");
  cmdRefute->add_option("--seed", seed, "seed for sampled valuation sweeps");

  auto* cmdPaper = app.add_subcommand("paper", "Work with the bundled model families");
  int figure = 0, familySize = 10, depth = 0;
  bool check = false, scan = false;
  cmdPaper->add_option("--figure", figure, "family number (2-5)")
      ->required()
      ->check(CLI::Range(2, 5));
  cmdPaper->add_option("--n", familySize, "truncation size")->check(CLI::Range(1, 14));
  auto* checkFlag = cmdPaper->add_flag("--check", check, "verify the family's properties");
  auto* scanFlag =
      cmdPaper->add_flag("--scan", scan, "refute every fixed-point candidate on the family");
  checkFlag->excludes(scanFlag);
  cmdPaper->add_option("--depth", depth, "candidate depth for --scan")->check(CLI::Range(1, 4));
  std::string outFile;
  cmdPaper->add_option("--out", outFile, "write the model to this file");
  cmdPaper->add_option("--dot", dotFile, "write the model in DOT format");

  auto* cmdSuite = app.add_subcommand("suite", "Run the semantic theorem suite");
  std::vector<std::string> names;
  int suiteSize = 3;
  cmdSuite->add_option("--name", names, "run only these entries");
  cmdSuite->add_option("--max-size", suiteSize, "bound on worlds")->check(CLI::Range(1, 31));
  cmdSuite->add_option("--seed", seed, "seed for instance sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmdParse) return do_parse(formulaText);
    if (*cmdModel) return do_check_model(modelFile, formulaText, world);
    if (*cmdFrame) return do_check_frame(frameFile, logicName);
    if (*cmdFix) return do_fixpoint(logicName, formulaText, varName, verify, maxSize);
    if (*cmdRefute) return do_refute(logicName, formulaText, maxSize, dotFile, seed);
    if (*cmdPaper) return do_paper(figure, familySize, check, scan, depth, outFile, dotFile);
    if (*cmdSuite) return do_suite(names, suiteSize, seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
