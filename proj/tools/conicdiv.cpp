// conicdiv: command-line access to class groups, conic classes, Segre
// depth computations, multiplicities and Hilbert-Kunz data.
//
// <input> is a preset name (orthant:d, figure1, segre:d1,..., veronese:d,c)
// or the path of a JSON monoid document.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conicdiv/conicdiv.hpp"

using namespace conicdiv;

namespace {

MonoidInput load_input(const std::string& arg) {
  if (is_preset_name(arg)) return preset_input(arg);
  std::ifstream in(arg);
  if (!in) throw InputError("cannot read input '" + arg + "' (not a preset name or readable file)");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

std::vector<std::int64_t> int_list(const std::string& text, const std::string& what) {
  const auto v = detail::parse_int_list(text, what);
  return {v.begin(), v.end()};
}

std::vector<int> dims_list(const std::string& text) {
  const auto v = detail::parse_int_list(text, "--dims");
  return {v.begin(), v.end()};
}

std::pair<std::int64_t, std::int64_t> window(const std::string& text) {
  const auto v = int_list(text, "--window");
  if (v.size() != 2 || v[0] > v[1]) throw InputError("--window expects lo,hi with lo <= hi");
  return {v[0], v[1]};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

struct Context {
  Cone cone;
  ClassGroup group;
  explicit Context(const std::string& input) : cone(build_cone(load_input(input))), group(cone) {}
};

Json table_json(const Context& ctx, const ConicTable& table, bool with_mu) {
  Json rows = Json::array();
  std::map<ClassLabel, std::size_t> mu;
  if (with_mu) mu = generator_counts(ctx.cone, table);
  for (const auto& r : table.rows) {
    Json row{{"label", to_json(r.label)},
             {"representative", to_json(r.representative)},
             {"volume", to_json(r.volume)},
             {"pieces", r.pieces.size()}};
    if (with_mu) row["mu"] = mu.at(r.label);
    rows.push_back(std::move(row));
  }
  return Json{{"classes", rows}, {"total_volume", to_json(table.total_volume())}};
}

Json multiplicity_json(const MultiplicityVector& mv) {
  Json counts = Json::array();
  for (const auto& [label, c] : mv.counts) counts.push_back({{"label", to_json(label)}, {"count", to_json(c)}});
  return Json{{"n", mv.n}, {"counts", counts}, {"total", to_json(mv.total())}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conic divisor classes of normal affine monoid rings"};
  app.require_subcommand(1);

  std::string input, u_text, dims_text, shifts_text, window_text, steps_text, out_path;
  std::uint64_t n = 1, nmax = 30, hk_n = 0, oracle_n = 0;
  bool with_mu = false, fit = false, hk_mult = false, hk_tu = false;

  auto* classgroup = app.add_subcommand("classgroup", "Class group of the monoid");
  classgroup->add_option("input", input, "Preset name or JSON file")->required();

  auto* conic = app.add_subcommand("conic", "Conic classes");
  conic->require_subcommand(1);
  auto* conic_list = conic->add_subcommand("list", "All conic classes with cell volumes");
  conic_list->add_option("input", input, "Preset name or JSON file")->required();
  conic_list->add_flag("--mu", with_mu, "Add the number of generators of each class");
  auto* conic_test = conic->add_subcommand("test", "Test whether D(u) is conic");
  conic_test->add_option("input", input, "Preset name or JSON file")->required();
  conic_test->add_option("--u", u_text, "Comma-separated divisor vector")->required();

  auto* segre = app.add_subcommand("segre", "Segre products of polynomial rings");
  segre->require_subcommand(1);
  auto* segre_cm = segre->add_subcommand("cm", "CM test, depth and a CM ordering");
  segre_cm->add_option("--dims", dims_text, "Polynomial ring dimensions, e.g. 3,3,3")->required();
  segre_cm->add_option("--shifts", shifts_text, "Degree shift of each factor")->required();
  auto* segre_region = segre->add_subcommand("region", "CM flag and depth over a window of classes");
  segre_region->add_option("--dims", dims_text, "Polynomial ring dimensions")->required();
  segre_region->add_option("--window", window_text, "Shift range lo,hi")->required();
  auto* segre_ver = segre->add_subcommand("veronese", "CM classes of a Segre product of two Veronese rings");
  segre_ver->add_option("--dims", dims_text, "Dimensions of the two polynomial rings")->required();
  segre_ver->add_option("--steps", steps_text, "Veronese steps of the two factors")->required();
  segre_ver->add_option("--window", window_text, "Shift range lo,hi")->required();

  auto* decompose = app.add_subcommand("decompose", "Multiplicities of conic classes in R^{1/n}");
  decompose->add_option("input", input, "Preset name or JSON file")->required();
  decompose->add_option("-n", n, "Frobenius exponent")->check(CLI::PositiveNumber);
  decompose->add_flag("--fit", fit, "Fit quasi-polynomials to n = 1..nmax");
  decompose->add_option("--nmax", nmax, "Largest n used by --fit")->check(CLI::PositiveNumber);

  auto* hk = app.add_subcommand("hk", "Hilbert-Kunz function and multiplicity");
  hk->add_option("input", input, "Preset name or JSON file")->required();
  auto* hk_opts = hk->add_option_group("mode");
  hk_opts->add_option("--function", hk_n, "hk(n) from the conic decomposition")->check(CLI::PositiveNumber);
  hk_opts->add_flag("--multiplicity", hk_mult, "Exact e_HK");
  hk_opts->add_option("--oracle", oracle_n, "Compare hk(n) with a direct colength count")->check(CLI::PositiveNumber);
  hk_opts->add_flag("--tu", hk_tu, "Total unimodularity of the support forms");
  hk_opts->require_option(1);

  auto* render = app.add_subcommand("render", "SVG drawings");
  render->require_subcommand(1);
  auto* render_cells_cmd = render->add_subcommand("cells", "Cells of a 2-dimensional torus decomposition");
  render_cells_cmd->add_option("input", input, "Preset name or JSON file")->required();
  render_cells_cmd->add_option("-o", out_path, "Output SVG path")->required();
  auto* render_segre_cmd = render->add_subcommand("segre", "CM and depth diagram of a triple Segre product");
  render_segre_cmd->add_option("--dims", dims_text, "Exactly three dimensions")->required();
  render_segre_cmd->add_option("--window", window_text, "Shift range lo,hi")->default_val("-5,5");
  render_segre_cmd->add_option("-o", out_path, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }

  try {
    Json out;
    if (*classgroup) {
      Context ctx(input);
      Json inv = Json::array();
      for (const auto& f : ctx.group.invariant_factors()) inv.push_back(to_json(f));
      out = {{"invariant_factors", inv}, {"free_rank", ctx.group.free_rank()}, {"num_forms", ctx.cone.num_forms()}};
    } else if (*conic_list) {
      Context ctx(input);
      out = table_json(ctx, enumerate_conic_classes(ctx.cone, ctx.group), with_mu);
    } else if (*conic_test) {
      Context ctx(input);
      const auto raw = int_list(u_text, "--u");
      IntVector u;
      for (auto x : raw) u.emplace_back(static_cast<long>(x));
      const auto t = is_conic(ctx.cone, u);
      out = {{"conic", t.conic}, {"class", to_json(ctx.group.class_of(u))}};
      if (t.witness) out["witness"] = to_json(*t.witness);
    } else if (*segre_cm) {
      const auto fs = segre_factors(dims_list(dims_text), int_list(shifts_text, "--shifts"));
      const bool cm = is_cm(fs);
      out = {{"cm", cm}, {"depth", depth(fs)}, {"dimension", segre_dimension(fs)}};
      if (cm) {
        Json perm = Json::array();
        for (auto j : cm_permutation(fs)) perm.push_back(j + 1);
        out["permutation"] = perm;
      }
    } else if (*segre_region) {
      const auto [lo, hi] = window(window_text);
      Json pts = Json::array();
      std::size_t cm_count = 0;
      for (const auto& p : segre_window(dims_list(dims_text), lo, hi)) {
        pts.push_back({{"class", p.differences}, {"cm", p.cm}, {"depth", p.depth}});
        cm_count += p.cm;
      }
      out = {{"points", pts}, {"cm_count", cm_count}};
    } else if (*segre_ver) {
      const auto dims = dims_list(dims_text);
      const auto steps = int_list(steps_text, "--steps");
      if (dims.size() != 2 || steps.size() != 2) throw InputError("--dims and --steps take two values each");
      const auto [lo, hi] = window(window_text);
      out = {{"cm_classes", veronese_segre_cm_set(dims[0], dims[1], steps[0], steps[1], lo, hi)}};
    } else if (*decompose) {
      Context ctx(input);
      const auto table = enumerate_conic_classes(ctx.cone, ctx.group);
      out = multiplicity_json(multiplicity_vector(ctx.cone, ctx.group, table, n));
      if (fit) {
        const auto period = default_period_bound(table);
        if (!period.fits_ulong_p()) throw InputError("period bound too large");
        std::map<ClassLabel, std::vector<Integer>> series;
        for (std::uint64_t k = 1; k <= nmax; ++k) {
          const auto mv = multiplicity_vector(ctx.cone, ctx.group, table, k);
          for (const auto& r : table.rows) series[r.label].push_back(mv.count(r.label));
        }
        Json fits = Json::array();
        for (const auto& r : table.rows) {
          const auto q = fit_quasi_polynomial(series[r.label], ctx.cone.dim(), period.get_ui(), r.volume);
          fits.push_back({{"label", to_json(r.label)}, {"quasi_polynomial", to_json(q)}});
        }
        out["fit"] = fits;
      }
    } else if (*hk) {
      Context ctx(input);
      if (hk_tu) {
        out = {{"totally_unimodular", is_totally_unimodular(ctx.cone)}};
      } else {
        const auto table = enumerate_conic_classes(ctx.cone, ctx.group);
        if (hk_mult) {
          out = {{"e_hk", to_json(hk_multiplicity(ctx.cone, table))}};
        } else if (hk_n > 0) {
          out = {{"n", hk_n}, {"hk", to_json(hk_function(ctx.cone, ctx.group, table, hk_n))}};
        } else {
          const auto oracle = frobenius_colength_oracle(ctx.cone, oracle_n);
          const auto value = hk_function(ctx.cone, ctx.group, table, oracle_n);
          out = {{"n", oracle_n}, {"oracle", to_json(oracle)}, {"hk", to_json(value)}, {"agree", oracle == value}};
        }
      }
    } else if (*render_cells_cmd) {
      Context ctx(input);
      if (ctx.cone.dim() != 2) throw InputError("render cells needs a 2-dimensional monoid");
      const auto table = enumerate_conic_classes(ctx.cone, ctx.group);
      write_file(out_path, render_cells(table));
      out = {{"written", out_path}, {"classes", table.rows.size()}};
    } else if (*render_segre_cmd) {
      const auto [lo, hi] = window(window_text);
      write_file(out_path, render_segre(dims_list(dims_text), lo, hi));
      out = {{"written", out_path}};
    }
    std::cout << out.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
}
