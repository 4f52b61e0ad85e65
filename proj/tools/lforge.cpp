#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lforge/groebner.hpp"
#include "lforge/link.hpp"
#include "lforge/parse.hpp"
#include "lforge/pfaffian.hpp"
#include "lforge/snf.hpp"
#include "lforge/workbench.hpp"

using namespace lforge;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportIOError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class F>
F field_for(const FieldSpec& fs);
template <>
PrimeField field_for<PrimeField>(const FieldSpec& fs) {
  return prime_field_of(fs);
}
template <>
RationalField field_for<RationalField>(const FieldSpec&) {
  return RationalField();
}

template <class F>
std::pair<RingPtr<F>, std::vector<MPoly<F>>> load_polys(const PolyFile& file) {
  auto ring = ring_from_header(file.header, field_for<F>(file.header.field));
  return {ring, parse_polys(file, ring)};
}

template <class F>
std::string describe(const Ideal<F>& I) {
  std::ostringstream os;
  if (I.is_homogeneous()) {
    auto [d, deg] = I.dim_degree();
    os << "# projective dimension " << d << ", degree " << deg << "\n";
  }
  return os.str();
}

template <class F>
int cmd_gb(const PolyFile& file, const GBOptions& opt) {
  auto [ring, polys] = load_polys<F>(file);
  Ideal<F> I(ring, polys, opt);
  const auto& gb = I.gb();
  std::cout << format_polys(gb.basis, ring, file.header.name);
  std::cout << "# " << gb.basis.size() << " elements, " << gb.stats.pairs_total << " pairs, "
            << gb.stats.zero_reductions << " zero reductions\n";
  std::cout << describe(I);
  return 0;
}

template <class F>
int cmd_link(const PolyFile& fi, const PolyFile& fc) {
  auto [ring, gi] = load_polys<F>(fi);
  if (!(fc.header.vars == fi.header.vars) || !(fc.header.field == fi.header.field))
    throw std::invalid_argument("ideal and complete intersection files must use the same ring");
  auto gc = parse_polys(fc, ring);
  auto step = link(Ideal<F>(ring, gi), Ideal<F>(ring, gc));
  std::cout << format_polys(step.residual.gens(), ring, fi.header.name);
  std::cout << "# " << step.summary() << "\n";
  return 0;
}

int cmd_pfaffian(const std::string& text, std::size_t order) {
  auto A = parse_skew_matrix(text);
  if (order == 0) order = A.size() - (A.size() % 2);
  if (order % 2 || order > A.size()) throw std::invalid_argument("order must be even and at most the matrix size");
  if (order == A.size()) {
    std::cout << format_polys(std::vector<MPoly<PrimeField>>{pfaffian(A)}, A.ring());
    return 0;
  }
  auto I = sub_pfaffians(A, order);
  std::cout << format_polys(I.gens(), A.ring());
  std::cout << describe(I);
  return 0;
}

template <class F>
int cmd_snf(const std::string& text, const F& K, double max_seconds) {
  auto M = parse_poly_matrix(text, K);
  SNFOptions opt;
  opt.max_seconds = max_seconds;
  opt.verify = true;
  auto r = smith_normal_form(M, opt);
  std::cout << "rank " << r.rank << "\n";
  for (std::size_t i = 0; i < r.diagonal.size(); ++i) std::cout << "d" << i << " = " << r.diagonal[i].to_string() << "\n";
  std::cout << "# transform verified " << (r.transform_verified ? "yes" : "no") << ", divisibility verified "
            << (r.divisibility_verified ? "yes" : "no") << "\n";
  return r.transform_verified && r.divisibility_verified ? 0 : code(ExitCode::assertion_failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lforge: projections, liaison, Pfaffians and Rao modules"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string config, format = "text";
  std::vector<std::string> bound_args;
  auto* run = app.add_subcommand("run", "run a registered experiment");
  run->add_option("experiment", spec.name, "experiment name")->required();
  auto* seed_opt = run->add_option("--seed", spec.seed, "random seed");
  auto* field_opt = run->add_option("--field", spec.field, "gf17 or qq");
  auto* threads_opt = run->add_option("--threads", spec.threads, "worker threads")->check(CLI::PositiveNumber);
  auto* long_opt = run->add_flag("--allow-long", spec.allow_long, "permit computations that may take hours");
  auto* out_opt = run->add_option("--out", spec.out_dir, "write <experiment>.txt and <experiment>.json here");
  auto* secs_opt = run->add_option("--max-seconds", spec.max_seconds, "time budget for bounded steps");
  run->add_option("--config", config, "INI configuration file")->check(CLI::ExistingFile);
  run->add_option("--bound", bound_args, "experiment bound key=value");
  run->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));

  app.add_subcommand("list", "list registered experiments");
  auto* fixtures = app.add_subcommand("fixtures", "verify fixture hashes");

  std::vector<std::string> files;
  GBOptions gbopt;
  std::size_t pf_order = 0;
  std::string snf_field = "gf17";
  double snf_seconds = 0;
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis of a polynomial file");
  gb->add_option("file", files, "polynomial file")->required()->expected(1);
  gb->add_option("--max-pairs", gbopt.max_pairs, "S-pair budget");
  gb->add_option("--max-seconds", gbopt.max_seconds, "time budget");
  auto* lk = app.add_subcommand("link", "residual of an ideal in a complete intersection");
  lk->add_option("files", files, "ideal file and complete intersection file")->required()->expected(2);
  auto* pf = app.add_subcommand("pfaffian", "Pfaffians of a skew matrix file");
  pf->add_option("file", files, "skew matrix file")->required()->expected(1);
  pf->add_option("--order", pf_order, "size of the principal Pfaffians (default: the matrix size)");
  auto* snf = app.add_subcommand("snf", "Smith normal form of a univariate polynomial matrix");
  snf->add_option("file", files, "polynomial matrix file")->required()->expected(1);
  snf->add_option("--field", snf_field, "gf17 or qq");
  snf->add_option("--max-seconds", snf_seconds, "time budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::usage);
  }

  try {
    if (app.got_subcommand("list")) {
      for (auto& e : experiment_registry())
        std::cout << e.name << (e.long_running ? " [long]" : "") << (e.stub ? " [stub]" : "")
                  << (e.supports_qq ? " [gf17|qq]" : " [gf17]") << "  " << e.description << "\n";
      return 0;
    }
    if (app.got_subcommand(fixtures)) {
      Fixtures fx;
      auto bad = fx.verify_all();
      for (auto& [name, hash] : fx.manifest())
        std::cout << (std::find(bad.begin(), bad.end(), name) == bad.end() ? "ok   " : "BAD  ") << name << "\n";
      return bad.empty() ? 0 : code(ExitCode::fixture);
    }
    if (app.got_subcommand(run)) {
      if (!config.empty()) {
        // Command-line flags override the file.
        ExperimentSpec from_file;
        from_file.name = spec.name;
        apply_config_file(config, from_file);
        if (!seed_opt->count()) spec.seed = from_file.seed;
        if (!field_opt->count()) spec.field = from_file.field;
        if (!threads_opt->count()) spec.threads = from_file.threads;
        if (!long_opt->count()) spec.allow_long = from_file.allow_long;
        if (!out_opt->count()) spec.out_dir = from_file.out_dir;
        if (!secs_opt->count()) spec.max_seconds = from_file.max_seconds;
        spec.fixture_dir = from_file.fixture_dir;
        spec.bounds = from_file.bounds;
      }
      for (auto& b : bound_args) {
        auto eq = b.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--bound", "expected key=value, got " + b);
        spec.bounds[b.substr(0, eq)] = std::stoll(b.substr(eq + 1));
      }
      Report r;
      try {
        r = run_experiment(spec);
      } catch (const BudgetExceeded& e) {
        std::cerr << "lforge: budget exceeded in " << spec.name << ": " << e.what() << "\n";
        return code(ExitCode::budget);
      }
      if (spec.threads > 1) r.note("computations run on one thread; --threads " + std::to_string(spec.threads) + " was recorded only");
      std::cout << (format == "json" ? r.to_json() : r.to_text());
      if (!spec.out_dir.empty()) {
        auto t = emit_report(r, ReportFormat::text, spec.out_dir);
        auto j = emit_report(r, ReportFormat::json, spec.out_dir);
        std::cerr << "wrote " << t << " and " << j << "\n";
      }
      return code(r.exit_code());
    }
    if (app.got_subcommand(gb)) {
      auto file = read_poly_file(files[0]);
      return file.header.field.kind == FieldSpec::Kind::rationals ? cmd_gb<RationalField>(file, gbopt)
                                                                   : cmd_gb<PrimeField>(file, gbopt);
    }
    if (app.got_subcommand(lk)) {
      auto fi = read_poly_file(files[0]), fc = read_poly_file(files[1]);
      return fi.header.field.kind == FieldSpec::Kind::rationals ? cmd_link<RationalField>(fi, fc)
                                                                 : cmd_link<PrimeField>(fi, fc);
    }
    if (app.got_subcommand(pf)) return cmd_pfaffian(read_file(files[0]), pf_order);
    if (app.got_subcommand(snf)) {
      auto fs = FieldSpec::parse(snf_field);
      auto text = read_file(files[0]);
      return fs.kind == FieldSpec::Kind::rationals ? cmd_snf(text, RationalField(), snf_seconds)
                                                   : cmd_snf(text, prime_field_of(fs), snf_seconds);
    }
  } catch (const BudgetRefused& e) {
    std::cerr << "lforge: refused: " << e.what() << "\n";
    return code(ExitCode::budget);
  } catch (const BudgetExceeded& e) {
    std::cerr << "lforge: budget exceeded: " << e.what() << "\n";
    return code(ExitCode::budget);
  } catch (const FixtureError& e) {
    std::cerr << "lforge: fixture error: " << e.what() << "\n";
    return code(ExitCode::fixture);
  } catch (const ReportIOError& e) {
    std::cerr << "lforge: I/O error: " << e.what() << "\n";
    return code(ExitCode::io);
  } catch (const ParseError& e) {
    std::cerr << "lforge: parse error: " << e.what() << "\n";
    return code(ExitCode::usage);
  } catch (const std::invalid_argument& e) {
    std::cerr << "lforge: " << e.what() << "\n";
    return code(ExitCode::usage);
  } catch (const CLI::Error& e) {
    std::cerr << "lforge: " << e.what() << "\n";
    return code(ExitCode::usage);
  } catch (const std::exception& e) {
    std::cerr << "lforge: error: " << e.what() << "\n";
    return code(ExitCode::internal);
  }
  return 0;
}
