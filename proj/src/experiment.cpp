#include "prickle/experiment.hpp"

#include "prickle/cones.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace prickle {

Rat median_of(std::vector<long> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty list");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return Rat(values[mid]);
  return rat(values[mid - 1] + values[mid], 2);
}

std::vector<ExperimentRow> run_experiment(const std::string& dir, int viewpoints,
                                          DiagonalRule rule) {
  if (viewpoints < 1) throw std::invalid_argument("run_experiment: need at least one viewpoint");
  namespace fs = std::filesystem;
  std::vector<std::string> names;
  for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::optional<TerrainFormat> fmt = format_for_path(name);
    if (fmt == TerrainFormat::Off || fmt == TerrainFormat::EsriGrid) names.push_back(name);
  }
  std::sort(names.begin(), names.end());

  std::vector<ExperimentRow> rows;
  rows.reserve(names.size());
  for (const std::string& name : names) {
    ExperimentRow row;
    row.terrain_id = name;
    try {
      const LoadedTerrain lt = load_terrain_file((fs::path(dir) / name).string(), std::nullopt, rule);
      const Terrain2D& t = *lt.t2;
      row.n = static_cast<long>(t.vertices.size());
      row.prickliness = prickliness_2d(t).value;
      for (const Viewpoint& vp : select_viewpoints(t, viewpoints))
        row.viewshed_totals.push_back(viewshed_vertices_2d(t, vp).total);
      row.median_total = median_of(row.viewshed_totals);
    } catch (const std::exception& e) {
      row = ExperimentRow{};
      row.terrain_id = name;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.terrain_id < b.terrain_id;
  });
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << "terrain_id,n,prickliness,viewpoints,viewshed_totals,median_viewshed,error\n";
  for (const ExperimentRow& row : rows) {
    os << csv_field(row.terrain_id) << ',';
    if (row.error.empty()) {
      std::ostringstream totals;
      for (std::size_t i = 0; i < row.viewshed_totals.size(); ++i) {
        if (i) totals << ';';
        totals << row.viewshed_totals[i];
      }
      os << row.n << ',' << row.prickliness << ',' << row.viewshed_totals.size() << ','
         << totals.str() << ',' << format_rat(row.median_total) << ',';
    } else {
      os << ",,,,,";
    }
    os << csv_field(row.error) << '\n';
  }
  return os.str();
}

} // namespace prickle
