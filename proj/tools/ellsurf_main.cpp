// command line front end.  every subcommand reads JSON (file path or
// "-" for stdin), prints a schema-stamped JSON document (or a plain
// table with --format table), and maps failures to stable exit codes:
//   0 success
//   1 malformed input
//   2 unusable surface (singular model, not rational elliptic, no
//     usable conic bundle)
//   3 decision needs section data that was not supplied
//   4 degenerate cover
//   5 inconsistent tower
//   70 internal invariant failure (a bug)

#include <CLI11.hpp>

#include "ellsurf/fuzzing.hpp"
#include "ellsurf/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw ellsurf::ParseError("cannot read input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonOpts {
  std::string input = "-";
  std::string format = "json";

  void attach(CLI::App* cmd) {
    cmd->add_option("input", input,
                    "path to a JSON input file, or - for stdin");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  }
  bool table() const { return format == "table"; }
};

std::optional<bool> tri_state(int v) {
  if (v < 0) return std::nullopt;
  return v != 0;
}

int run_fuzz(int count, const std::string& format) {
  std::uint64_t seed = 1;
  if (const char* s = std::getenv("ELLSURF_SEED")) {
    seed = std::strtoull(s, nullptr, 10);
  }
  ellsurf::SplitMix64 rng(seed);
  for (int i = 0; i < count; ++i) {
    ellsurf::WeierstrassModel m = ellsurf::random_model(rng);
    ellsurf::SurfaceReport rep = ellsurf::classify_all(m);
    if (rep.euler_total % 12 != 0)
      throw ellsurf::InternalError(
          "fuzz: euler total not divisible by 12 for " +
          ellsurf::render_model_json(m));
    for (const auto& f : rep.fibers) {
      ellsurf::KodairaType dt = ellsurf::dokchitser_type(m, f.place);
      if (!(dt == f.type))
        throw ellsurf::InternalError(
            "fuzz: classification routes disagree (" + f.type.to_string() +
            " vs " + dt.to_string() + ") at " + f.place.to_string() + " for " +
            ellsurf::render_model_json(m));
    }
  }
  if (format == "table") {
    std::cout << "checked " << count << " random surfaces (seed " << seed
              << "): classification routes agree, euler totals consistent\n";
  } else {
    std::cout << "{\n  \"schema\": \"ellsurf/1\",\n  \"kind\": \"fuzz\",\n"
              << "  \"count\": " << count << ",\n  \"seed\": " << seed
              << ",\n  \"mismatches\": 0\n}\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact fiber classification, base change and Mordell-Weil rank "
      "tools for elliptic surfaces over Q(t)"};
  app.require_subcommand(1);

  // classify
  auto* classify = app.add_subcommand(
      "classify", "Kodaira types, Euler number and generic rank");
  CommonOpts classify_opts;
  classify_opts.attach(classify);

  // rnrf
  auto* rnrf = app.add_subcommand(
      "rnrf",
      "decide whether a double cover ramified away from every reduced "
      "fiber exists");
  CommonOpts rnrf_opts;
  rnrf_opts.attach(rnrf);
  int s_nontrivial = -1, s_redfiber = -1, s_near = -1, s_conj = -1,
      s_twotors = -1, s_mwrank = -1;
  rnrf->add_option("--has-nontrivial-section", s_nontrivial,
                   "a section other than the zero section exists (0/1)");
  rnrf->add_option("--has-reducible-reduced-fiber", s_redfiber,
                   "some reduced fiber is reducible (0/1)");
  rnrf->add_option("--section-meets-near-component", s_near,
                   "a section meets the near component of the I1* fiber (0/1)");
  rnrf->add_option("--has-conjugate-disjoint-sections", s_conj,
                   "conjugate sections disjoint from the zero section (0/1)");
  rnrf->add_option("--has-two-torsion-section", s_twotors,
                   "a 2-torsion section exists (0/1)");
  rnrf->add_option("--mw-rank-over-k", s_mwrank,
                   "known Mordell-Weil rank over the ground field");

  // basechange
  auto* basechange = app.add_subcommand(
      "basechange",
      "pull back along a quadratic cover and verify fibers and Euler "
      "numbers");
  CommonOpts basechange_opts;
  basechange_opts.attach(basechange);

  // tower-genus
  auto* tower = app.add_subcommand(
      "tower-genus", "genus of an iterated quadratic cover of the t-line");
  CommonOpts tower_opts;
  tower_opts.attach(tower);
  int branch_count = -1, shared_count = -1;
  tower->add_option("--branch-count", branch_count,
                    "branch points of one further double cover");
  tower->add_option("--shared-count", shared_count,
                    "how many of those lie over the tower's branch locus");

  // jump-search
  auto* jump = app.add_subcommand(
      "jump-search", "scan integer parameters for fibers with extra rank");
  CommonOpts jump_opts;
  jump_opts.attach(jump);
  ellsurf::JumpOptions jopt;
  int generic_rank = 0;
  double precision = 1e-10;
  jump->add_option("--rank", generic_rank, "generic rank baseline")
      ->capture_default_str();
  jump->add_option("--jump", jopt.jump, "required rank excess")
      ->capture_default_str();
  jump->add_option("--t-min", jopt.t_min, "first integer parameter")
      ->capture_default_str();
  jump->add_option("--t-max", jopt.t_max, "last integer parameter")
      ->capture_default_str();
  jump->add_option("--height-bound", jopt.search.height_bound,
                   "numerator bound for the point search box")
      ->capture_default_str();
  jump->add_option("--precision", precision, "canonical height precision")
      ->capture_default_str();
  jump->add_option("--threads", jopt.threads, "worker threads")
      ->capture_default_str();

  // fuzz
  auto* fuzz = app.add_subcommand(
      "fuzz",
      "random differential test: both classification routes must agree "
      "(seed from ELLSURF_SEED)");
  int fuzz_count = 100;
  std::string fuzz_format = "json";
  fuzz->add_option("--count", fuzz_count, "number of random surfaces")
      ->capture_default_str();
  fuzz->add_option("--format", fuzz_format, "output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      ellsurf::WeierstrassModel m =
          ellsurf::parse_model_json(read_input(classify_opts.input));
      ellsurf::SurfaceReport rep = ellsurf::classify_all(m);
      std::cout << (classify_opts.table() ? ellsurf::render_report_table(rep)
                                          : ellsurf::render_report_json(rep));
      return 0;
    }
    if (rnrf->parsed()) {
      ellsurf::WeierstrassModel m =
          ellsurf::parse_model_json(read_input(rnrf_opts.input));
      ellsurf::SurfaceReport rep = ellsurf::classify_all(m);
      if (!rep.rational_elliptic)
        throw ellsurf::NotRationalElliptic(
            "rnrf decisions apply to rational elliptic surfaces only");
      ellsurf::SectionData sections;
      sections.has_nontrivial_section = tri_state(s_nontrivial);
      sections.has_reducible_reduced_fiber = tri_state(s_redfiber);
      sections.section_meets_near_component = tri_state(s_near);
      sections.has_conjugate_disjoint_sections = tri_state(s_conj);
      sections.has_two_torsion_section = tri_state(s_twotors);
      if (s_mwrank >= 0) sections.mw_rank_over_k = s_mwrank;
      ellsurf::RnrfReport rr = ellsurf::rnrf_exists(rep, sections);
      std::cout << (rnrf_opts.table() ? ellsurf::render_rnrf_table(rr)
                                      : ellsurf::render_rnrf_json(rr));
      return rr.status == ellsurf::RnrfStatus::InsufficientData ? 3 : 0;
    }
    if (basechange->parsed()) {
      ellsurf::SurfaceWithCover in =
          ellsurf::parse_surface_cover_json(read_input(basechange_opts.input));
      ellsurf::BaseChangeCheck check =
          ellsurf::verify_basechange(in.model, in.cover);
      std::cout << (basechange_opts.table()
                        ? ellsurf::render_basechange_table(check)
                        : ellsurf::render_basechange_json(check));
      return 0;
    }
    if (tower->parsed()) {
      ellsurf::CoverTower t =
          ellsurf::parse_tower_json(read_input(tower_opts.input));
      ellsurf::TowerGenusResult res;
      res.cover_count = int(t.covers.size());
      res.genus = ellsurf::tower_genus(t);
      if ((branch_count >= 0) != (shared_count >= 0))
        throw ellsurf::ParseError(
            "--branch-count and --shared-count go together");
      if (branch_count >= 0)
        res.obstruction =
            ellsurf::obstruction_genus(t, branch_count, shared_count);
      std::cout << (tower_opts.table() ? ellsurf::render_tower_table(res)
                                       : ellsurf::render_tower_json(res));
      return 0;
    }
    if (jump->parsed()) {
      ellsurf::WeierstrassModel m =
          ellsurf::parse_model_json(read_input(jump_opts.input));
      jopt.heights.precision = precision;
      ellsurf::JumpReport rep = ellsurf::jump_search(m, generic_rank, jopt);
      std::cout << (jump_opts.table() ? ellsurf::render_jump_table(rep)
                                      : ellsurf::render_jump_json(rep));
      return 0;
    }
    if (fuzz->parsed()) {
      return run_fuzz(fuzz_count, fuzz_format);
    }
  } catch (const ellsurf::ParseError& e) {
    std::cerr << "parse error: " << e.what();
    if (e.position != std::string::npos)
      std::cerr << " (at byte " << e.position << ")";
    std::cerr << "\n";
    return 1;
  } catch (const ellsurf::SingularModelError& e) {
    std::cerr << "singular model: " << e.what() << "\n";
    return 2;
  } catch (const ellsurf::NotRationalElliptic& e) {
    std::cerr << "not a rational elliptic surface: " << e.what() << "\n";
    return 2;
  } catch (const ellsurf::ConicBundleError& e) {
    std::cerr << "no usable conic bundle: " << e.what() << "\n";
    return 2;
  } catch (const ellsurf::InvalidCover& e) {
    std::cerr << "invalid cover: " << e.what() << "\n";
    return 4;
  } catch (const ellsurf::InvalidTower& e) {
    std::cerr << "invalid tower: " << e.what() << "\n";
    return 5;
  } catch (const ellsurf::InternalError& e) {
    std::cerr << "internal error (please report): " << e.what() << "\n";
    return 70;
  }
  return 0;
}
