#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "cosetq/affine.hpp"
#include "cosetq/branching.hpp"
#include "cosetq/errors.hpp"
#include "cosetq/format.hpp"
#include "cosetq/fusion.hpp"
#include "cosetq/kostka.hpp"
#include "cosetq/verify.hpp"

namespace cosetq::cli {

namespace {

enum class OutputFormat { plain, json, csv, latex };

struct CliConfig {
  std::string cache_dir;
  std::int64_t default_order = 12;
  OutputFormat format = OutputFormat::plain;
};

std::string render(const QSeries& s, OutputFormat format) {
  switch (format) {
    case OutputFormat::plain: return format_plain(s) + "\n";
    case OutputFormat::json: return to_json(s) + "\n";
    case OutputFormat::csv: return format_csv(s);
    case OutputFormat::latex: return format_latex(s) + "\n";
  }
  return {};
}

// Series under a labelled header, used when a command prints more than one.
void emit(std::ostream& out, const std::string& label, const QSeries& s, OutputFormat format) {
  if (format == OutputFormat::plain || format == OutputFormat::latex) {
    out << label << ": " << render(s, format);
  } else {
    out << "# " << label << "\n" << render(s, format);
  }
}

struct KostkaArgs {
  std::int64_t k = 1;
  std::int64_t j = 0;
  std::string m;
  std::string method = "fermionic";
  bool plain_normalization = false;
};

int cmd_kostka(const KostkaArgs& a, const CliConfig& cfg, std::ostream& out) {
  RestrictedKostkaQuery query{a.k, a.j, Composition::parse(a.m, a.k)};
  query.validate();
  auto normalize = [&](const QSeries& s) { return a.plain_normalization ? reverse(s, h_of(query.m)) : s; };
  if (a.method == "fermionic") {
    out << render(normalize(restricted_kostka_fermionic(query)), cfg.format);
    return kSuccess;
  }
  if (a.method == "alternating") {
    out << render(normalize(restricted_kostka_alternating(query)), cfg.format);
    return kSuccess;
  }
  const QSeries fer = normalize(restricted_kostka_fermionic(query));
  const QSeries alt = normalize(restricted_kostka_alternating(query));
  emit(out, "fermionic", fer, cfg.format);
  emit(out, "alternating", alt, cfg.format);
  const bool same = fer.identical(alt);
  out << (same ? "MATCH" : "MISMATCH") << "\n";
  return same ? kSuccess : kMismatch;
}

struct BranchingArgs {
  CosetSpec spec;
  std::string method = "bosonic";
  std::string normalization = "d";
};

BranchingMethod parse_method(const std::string& name) {
  if (name == "finite-n") return BranchingMethod::FINITE_N;
  if (name == "fermionic") return BranchingMethod::FERMIONIC;
  return BranchingMethod::BOSONIC;
}

void emit_branching(std::ostream& out, const std::string& label, const QSeries& d_graded, const Rational& prefix,
                    OutputFormat format) {
  std::string text;
  if (prefix == Rational(0)) {
    text = render(d_graded, format);
  } else if (format == OutputFormat::plain) {
    text = "q^(" + prefix.str() + ") * (" + format_plain(d_graded) + ")\n";
  } else if (format == OutputFormat::latex) {
    text = "q^{" + prefix.str() + "} \\left(" + format_latex(d_graded) + "\\right)\n";
  } else {
    text = render(d_graded.shift(prefix), format);
  }
  if (label.empty()) {
    out << text;
  } else if (format == OutputFormat::plain || format == OutputFormat::latex) {
    out << label << ": " << text;
  } else {
    out << "# " << label << "\n" << text;
  }
}

int cmd_branching(const BranchingArgs& a, std::int64_t order, const CliConfig& cfg, std::ostream& out) {
  a.spec.validate();
  if (order < 1) throw DomainError("--order must be >= 1");
  const Normalization norm = a.normalization == "l0" ? Normalization::L0_GRADING : Normalization::D_GRADING;
  const Rational prefix = branching_prefactor(a.spec, norm);
  if (a.method != "all") {
    emit_branching(out, "", branching(a.spec, order, parse_method(a.method)), prefix, cfg.format);
    return kSuccess;
  }
  const std::vector<BranchingMethod> methods{BranchingMethod::FINITE_N, BranchingMethod::BOSONIC,
                                             BranchingMethod::FERMIONIC};
  std::vector<QSeries> results;
  for (auto m : methods) results.push_back(branching(a.spec, order, m));
  const bool agree_all = std::all_of(results.begin(), results.end(),
                                     [&](const QSeries& s) { return s.identical(results.front()); });
  if (agree_all) {
    emit_branching(out, "", results.front(), prefix, cfg.format);
    out << "ALL METHODS AGREE\n";
    return kSuccess;
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    emit_branching(out, to_string(methods[i]), results[i], prefix, cfg.format);
  }
  out << "METHODS DISAGREE\n";
  return kMismatch;
}

struct CharArgs {
  std::int64_t i = 0;
  std::int64_t k = 1;
  std::int64_t weight = 0;
  std::string method = "limit";
};

int cmd_char(const CharArgs& a, std::int64_t order, const CliConfig& cfg, std::ostream& out) {
  const AffineLabel label{a.i, a.k};
  label.validate();
  if (order < 1) throw DomainError("--order must be >= 1");
  auto classical = [&] {
    if ((a.weight - a.i) % 2 != 0) return QSeries{};
    return classical_character(label, order, std::abs(a.weight)).component(a.weight);
  };
  if (a.method == "limit") {
    out << render(graded_component_char(label, a.weight, order), cfg.format);
    return kSuccess;
  }
  if (a.method == "classical") {
    out << render(classical(), cfg.format);
    return kSuccess;
  }
  const QSeries lim = graded_component_char(label, a.weight, order);
  const QSeries cls = classical();
  emit(out, "limit", lim, cfg.format);
  emit(out, "classical", cls, cfg.format);
  const bool same = agree(lim, cls);
  out << (same ? "MATCH" : "MISMATCH") << "\n";
  return same ? kSuccess : kMismatch;
}

struct VerifyArgs {
  std::string suite;
  std::int64_t max_level = 4;
  std::string report;
};

int cmd_verify(const VerifyArgs& a, std::int64_t order, std::ostream& out) {
  const VerifyOptions opts{a.max_level, order};
  const std::vector<SuiteReport> reports = run_suite(a.suite, opts);
  bool ok = true;
  out << "suite          cases   pass   fail   diagnostic\n";
  for (const auto& r : reports) {
    char line[96];
    std::snprintf(line, sizeof line, "%-13s %6zu %6zu %6zu %12zu\n", r.name.c_str(), r.cases.size(),
                  r.count(CaseStatus::PASS), r.count(CaseStatus::FAIL), r.count(CaseStatus::DIAGNOSTIC));
    out << line;
    ok = ok && r.passed();
  }
  for (const auto& r : reports) {
    for (const auto& c : r.cases) {
      if (c.status != CaseStatus::FAIL) continue;
      out << "FAIL " << r.name << ' ' << c.spec << ' ' << c.method_pair;
      if (c.first_mismatch) {
        out << " at q^" << c.first_mismatch->exponent.str() << ": " << c.first_mismatch->lhs.str() << " vs "
            << c.first_mismatch->rhs.str();
      }
      if (!c.detail.empty()) out << " (" << c.detail << ')';
      out << "\n";
    }
  }
  if (!a.report.empty()) {
    std::ofstream file(a.report, std::ios::trunc);
    if (!file) throw DomainError("cannot write report to " + a.report);
    file << report_json(reports);
  }
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kSuccess : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-series toolkit for affine sl2 branching functions", "cosetq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with default option values");

  CliConfig cfg;
  const std::map<std::string, OutputFormat> formats{
      {"plain", OutputFormat::plain}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"latex", OutputFormat::latex}};
  app.add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--cache-dir", cfg.cache_dir, "Directory for cached affine components");
  app.add_option("--order", cfg.default_order, "Truncation order (exclusive q-exponent bound)")
      ->check(CLI::PositiveNumber);

  KostkaArgs ka;
  auto* kostka = app.add_subcommand("kostka", "Restricted Kostka polynomial");
  kostka->add_option("--k", ka.k, "Level")->required();
  kostka->add_option("--j", ka.j, "Weight")->required();
  kostka->add_option("--m", ka.m, "Composition, as size:count pairs or a count list [m1,...,mk]")->required();
  kostka->add_option("--method", ka.method)->check(CLI::IsMember({"fermionic", "alternating", "both"}));
  auto* reversed = kostka->add_flag("--reversed", "Reversed normalization (default)");
  kostka->add_flag("--plain-normalization", ka.plain_normalization, "Unreversed normalization")->excludes(reversed);

  BranchingArgs ba;
  auto* branch = app.add_subcommand("branching", "Branching function");
  branch->add_option("--i1", ba.spec.i1)->required();
  branch->add_option("--k1", ba.spec.k1)->required();
  branch->add_option("--i2", ba.spec.i2)->required();
  branch->add_option("--k2", ba.spec.k2)->required();
  branch->add_option("--j", ba.spec.j)->required();
  branch->add_option("--method", ba.method)->check(CLI::IsMember({"finite-n", "bosonic", "fermionic", "all"}));
  branch->add_option("--normalization", ba.normalization)->check(CLI::IsMember({"d", "l0"}));

  CharArgs ca;
  auto* chr = app.add_subcommand("char", "Graded component of an integrable module");
  chr->add_option("--i", ca.i, "Highest weight")->required();
  chr->add_option("--k", ca.k, "Level")->required();
  chr->add_option("--weight", ca.weight, "h_0 weight")->required();
  chr->add_option("--method", ca.method)->check(CLI::IsMember({"limit", "classical", "both"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", va.suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-level", va.max_level)->check(CLI::Range(2, 16));
  verify->add_option("--report", va.report, "Write the JSON report here");

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    if (const char* env = std::getenv("COSETQ_CACHE"); env != nullptr && *env != '\0') cfg.cache_dir = env;
    ComponentCache::global().set_directory(
        cfg.cache_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(cfg.cache_dir));
    const std::int64_t order = cfg.default_order;

    if (kostka->parsed()) return cmd_kostka(ka, cfg, out);
    if (branch->parsed()) return cmd_branching(ba, order, cfg, out);
    if (chr->parsed()) return cmd_char(ca, order, cfg, out);
    if (verify->parsed()) return cmd_verify(va, order, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kMismatch;
  }
  return kInvalidInput;
}

}  // namespace cosetq::cli
