#include "prickle/experiment.hpp"
#include "prickle/sectors.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using namespace prickle;

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

std::optional<TerrainFormat> parse_format(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "off") return TerrainFormat::Off;
  if (s == "poly") return TerrainFormat::Polyline;
  if (s == "asc") return TerrainFormat::EsriGrid;
  throw std::invalid_argument("unknown format '" + s + "' (expected off, poly or asc)");
}

DiagonalRule parse_diagonal(const std::string& s) {
  if (s == "ll-ur") return DiagonalRule::LowerLeftUpperRight;
  if (s == "lr-ul") return DiagonalRule::LowerRightUpperLeft;
  throw std::invalid_argument("unknown diagonal '" + s + "' (expected ll-ur or lr-ul)");
}

Rat parse_rat_arg(const std::string& s, const char* what) {
  std::optional<Rat> q = parse_rat(s);
  if (!q) throw std::invalid_argument(std::string(what) + ": not a number: '" + s + "'");
  return *q;
}

std::string fmt_vec2(const Vec2& v) {
  return "(" + format_rat(v.x) + "," + format_rat(v.y) + ")";
}

std::string fmt_vec3(const Vec3& v) {
  return "(" + format_rat(v.x) + "," + format_rat(v.y) + "," + format_rat(v.z) + ")";
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
    std::cout << "wrote " << out_path << "\n";
  }
}

struct CommonInput {
  std::string path;
  std::string format;
  std::string diagonal = "ll-ur";

  void attach(CLI::App* sub) {
    sub->add_option("terrain", path, "terrain file (.off, .poly or .asc)")->required();
    sub->add_option("--format", format, "force input format: off, poly or asc");
    sub->add_option("--diagonal", diagonal,
                    "cell diagonal for grid files: ll-ur (default) or lr-ul");
  }

  LoadedTerrain load() const {
    return load_terrain_file(path, parse_format(format), parse_diagonal(diagonal));
  }
};

void cmd_validate(const CommonInput& in) {
  const LoadedTerrain lt = in.load();
  if (lt.t2) {
    std::cout << "ok kind=2.5d n=" << lt.t2->vertices.size()
              << " triangles=" << lt.t2->triangles.size() << "\n";
  } else {
    std::cout << "ok kind=1.5d n=" << lt.t1->vertices.size() << "\n";
  }
}

void cmd_prickliness(const CommonInput& in, const std::string& algo, bool check) {
  const LoadedTerrain lt = in.load();
  if (lt.t2) {
    Prickliness2DResult r =
        algo == "brute" ? brute_force_2d(*lt.t2) : prickliness_2d(*lt.t2);
    if (check) {
      const Prickliness2DResult other =
          algo == "brute" ? prickliness_2d(*lt.t2) : brute_force_2d(*lt.t2);
      if (other.value != r.value) {
        std::ostringstream os;
        os << "prickliness check failed: sweep and brute force disagree ("
           << (algo == "brute" ? other.value : r.value) << " vs "
           << (algo == "brute" ? r.value : other.value) << ")";
        throw std::runtime_error(os.str());
      }
    }
    std::cout << "pi=" << r.value << " witness=" << fmt_vec3(r.witness.v) << "\n";
  } else {
    Prickliness1DResult r =
        algo == "brute" ? brute_force_1d(*lt.t1) : prickliness_1d(*lt.t1);
    if (check) {
      const Prickliness1DResult other =
          algo == "brute" ? prickliness_1d(*lt.t1) : brute_force_1d(*lt.t1);
      if (other.value != r.value) {
        std::ostringstream os;
        os << "prickliness check failed: sweep and brute force disagree ("
           << (algo == "brute" ? other.value : r.value) << " vs "
           << (algo == "brute" ? r.value : other.value) << ")";
        throw std::runtime_error(os.str());
      }
    }
    std::cout << "pi=" << r.value << " witness=" << fmt_vec2(r.witness) << "\n";
  }
  if (check) std::cout << "check=agree\n";
}

void cmd_heatmap(const CommonInput& in, int res, const std::string& max_offset,
                 const std::string& out_base) {
  const LoadedTerrain lt = in.load();
  if (!lt.t2) throw std::runtime_error("heatmap requires a 2.5D terrain");
  const DirectionGrid g = heatmap(*lt.t2, res, parse_rat_arg(max_offset, "--max-offset"));
  write_file(out_base + ".csv", heatmap_csv(g));
  std::cout << "wrote " << out_base << ".csv\n";
  write_file(out_base + ".pgm", heatmap_pgm(g));
  std::cout << "wrote " << out_base << ".pgm\n";
}

void cmd_viewshed(const CommonInput& in, int viewpoint, int auto_k,
                  const std::string& height_offset, const std::string& out_path) {
  const LoadedTerrain lt = in.load();
  if (!lt.t2) throw std::runtime_error("viewshed statistics require a 2.5D terrain");
  const Terrain2D& t = *lt.t2;
  std::vector<Viewpoint> vps;
  if (viewpoint >= 0) {
    vps.push_back(viewpoint_at_vertex(t, viewpoint));
  } else {
    vps = select_viewpoints(t, auto_k);
  }
  const Rat offset = height_offset.empty() ? Rat(0) : parse_rat_arg(height_offset, "--height-offset");
  const long pi = prickliness_2d(t).value;
  const std::string id = basename_of(in.path);
  std::string csv = viewshed_stats_csv_header();
  for (const Viewpoint& vp : vps) {
    const ViewshedStats s = viewshed_vertices_2d(t, vp, offset);
    csv += viewshed_stats_csv_row(id, "v" + std::to_string(vp.vertex), s, pi,
                                  static_cast<long>(t.vertices.size()));
  }
  emit(out_path, csv);
}

void cmd_generate(const std::string& family, const std::vector<std::string>& params,
                  const std::string& out_path) {
  GeneratorSpec spec;
  spec.family = family;
  for (const std::string& kv : params) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--params entries must look like key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    if (!spec.params.emplace(key, kv.substr(eq + 1)).second)
      throw std::invalid_argument("duplicate parameter '" + key + "'");
  }
  const GeneratedTerrain g = make_terrain(spec);
  const std::optional<TerrainFormat> fmt = format_for_path(out_path);
  if (g.t2) {
    if (fmt != TerrainFormat::Off)
      throw std::invalid_argument("family '" + family + "' produces a 2.5D terrain; --out must end in .off");
    write_file(out_path, serialize_off(*g.t2));
    std::cout << "wrote " << out_path << " n=" << g.t2->vertices.size() << "\n";
    if (g.viewpoint2)
      std::cout << "viewpoint vertex=" << g.viewpoint2->vertex
                << " position=" << fmt_vec3(g.viewpoint2->position) << "\n";
  } else {
    if (fmt != TerrainFormat::Polyline)
      throw std::invalid_argument("family '" + family + "' produces a 1.5D terrain; --out must end in .poly");
    write_file(out_path, serialize_polyline(*g.t1));
    std::cout << "wrote " << out_path << " n=" << g.t1->vertices.size() << "\n";
    if (g.viewpoint1) std::cout << "viewpoint position=" << fmt_vec2(*g.viewpoint1) << "\n";
  }
}

void cmd_experiment(const std::string& dir, int viewpoints, const std::string& diagonal,
                    const std::string& out_path) {
  const std::vector<ExperimentRow> rows =
      run_experiment(dir, viewpoints, parse_diagonal(diagonal));
  emit(out_path, experiment_csv(rows));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"prickliness and viewshed analysis for 1.5D and 2.5D terrains"};
  app.require_subcommand(1);

  CommonInput val_in;
  CLI::App* validate = app.add_subcommand("validate", "parse a terrain file and check invariants");
  val_in.attach(validate);

  CommonInput pr_in;
  std::string pr_algo = "sweep";
  bool pr_check = false;
  CLI::App* prickliness = app.add_subcommand(
      "prickliness", "maximum over view directions of the number of convex local maxima");
  pr_in.attach(prickliness);
  prickliness->add_option("--algo", pr_algo, "algorithm: sweep (default) or brute")
      ->check(CLI::IsMember({"sweep", "brute"}));
  prickliness->add_flag("--check", pr_check, "also run the other algorithm and require agreement");

  CommonInput hm_in;
  int hm_res = 33;
  std::string hm_max_offset = "60";
  std::string hm_out;
  CLI::App* heatmap_cmd = app.add_subcommand(
      "heatmap", "sample directional local-maxima counts on a grid of view directions");
  hm_in.attach(heatmap_cmd);
  heatmap_cmd->add_option("--res", hm_res, "grid resolution per axis (default 33)")
      ->check(CLI::Range(2, 4096));
  heatmap_cmd->add_option("--max-offset", hm_max_offset,
                          "maximum angular offset from vertical, degrees (default 60)");
  heatmap_cmd->add_option("--out", hm_out, "output base path (writes BASE.csv and BASE.pgm)")
      ->required();

  CommonInput vs_in;
  int vs_viewpoint = -1;
  int vs_auto = 0;
  std::string vs_height_offset;
  std::string vs_out;
  CLI::App* viewshed_cmd =
      app.add_subcommand("viewshed", "viewshed-boundary statistics from one or more viewpoints");
  vs_in.attach(viewshed_cmd);
  CLI::Option* vs_vp_opt =
      viewshed_cmd->add_option("--viewpoint", vs_viewpoint, "viewpoint vertex index")
          ->check(CLI::NonNegativeNumber);
  CLI::Option* vs_auto_opt =
      viewshed_cmd->add_option("--auto", vs_auto, "select K separated high viewpoints")
          ->check(CLI::Range(1, 1000));
  vs_vp_opt->excludes(vs_auto_opt);
  viewshed_cmd->add_option("--height-offset", vs_height_offset,
                           "lift the eye this far above the viewpoint");
  viewshed_cmd->add_option("--out", vs_out, "output CSV path (default: stdout)");

  std::string gen_family;
  std::vector<std::string> gen_params;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "build a terrain from a named family");
  generate->add_option("--family", gen_family,
                       "quadratic, boxed-mountains, spiral-teeth, element-distinctness, "
                       "cone-gadget, random, random-1d or grid")
      ->required();
  generate->add_option("--params", gen_params, "family parameters as key=value");
  generate->add_option("--out", gen_out, "output terrain file (.off or .poly)")->required();

  std::string ex_dir;
  int ex_viewpoints = 9;
  std::string ex_diagonal = "ll-ur";
  std::string ex_out;
  CLI::App* experiment =
      app.add_subcommand("experiment", "prickliness vs. viewshed complexity over a corpus");
  experiment->add_option("--inputs", ex_dir, "directory of .off/.asc terrains")->required();
  experiment->add_option("--viewpoints", ex_viewpoints,
                         "viewpoints per terrain (default 9)")
      ->check(CLI::Range(1, 1000));
  experiment->add_option("--diagonal", ex_diagonal,
                         "cell diagonal for grid files: ll-ur (default) or lr-ul");
  experiment->add_option("--out", ex_out, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
    if (validate->parsed()) {
      cmd_validate(val_in);
    } else if (prickliness->parsed()) {
      cmd_prickliness(pr_in, pr_algo, pr_check);
    } else if (heatmap_cmd->parsed()) {
      cmd_heatmap(hm_in, hm_res, hm_max_offset, hm_out);
    } else if (viewshed_cmd->parsed()) {
      if (vs_viewpoint < 0 && vs_auto == 0)
        throw CLI::ValidationError("viewshed", "one of --viewpoint and --auto is required");
      cmd_viewshed(vs_in, vs_viewpoint, vs_auto, vs_height_offset, vs_out);
    } else if (generate->parsed()) {
      cmd_generate(gen_family, gen_params, gen_out);
    } else if (experiment->parsed()) {
      cmd_experiment(ex_dir, ex_viewpoints, ex_diagonal, ex_out);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
