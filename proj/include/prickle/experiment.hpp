#pragma once

#include "prickle/io.hpp"

#include <string>
#include <vector>

namespace prickle {

// One corpus terrain: its prickliness and the viewshed complexity (total
// viewshed-boundary vertex count) from each selected high viewpoint. A row
// with nonempty `error` is a diagnostic for a terrain that failed to load or
// validate; its other fields are unset.
struct ExperimentRow {
  std::string terrain_id; // file name relative to the corpus directory
  long n = 0;
  long prickliness = 0;
  std::vector<long> viewshed_totals; // one entry per selected viewpoint
  Rat median_total;
  std::string error;
};

// Exact median: middle element, or the average of the two middle elements.
// Throws std::invalid_argument on an empty list.
Rat median_of(std::vector<long> values);

// Runs the pipeline over every .off and .asc file directly inside `dir`
// (sorted by filename): parse + validate, prickliness_2d, select up to
// `viewpoints` separated high points, viewshed_vertices_2d from each.
// Parse/validation failures become diagnostic rows and the run continues.
// Rows are sorted by (n, terrain_id); the whole pipeline is deterministic.
std::vector<ExperimentRow> run_experiment(const std::string& dir, int viewpoints,
                                          DiagonalRule rule = DiagonalRule::LowerLeftUpperRight);

// CSV with header; viewshed_totals joined by ';' inside one field.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

} // namespace prickle
