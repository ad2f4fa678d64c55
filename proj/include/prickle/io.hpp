#pragma once

#include "prickle/cones.hpp"
#include "prickle/generators.hpp"
#include "prickle/terrain.hpp"
#include "prickle/viewshed.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prickle {

// Parse failure with 1-based source coordinates; what() already includes
// "line L, column C".
struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_, int col_);
};

// --- 1.5D polyline text (.poly): one "x z" pair per line, '#' comments ----

Terrain1D parse_polyline(std::string_view text);
std::string serialize_polyline(const Terrain1D& t);

// --- OFF (.off), triangles only ------------------------------------------

Terrain2D parse_off(std::string_view text);
std::string serialize_off(const Terrain2D& t);

// --- ESRI ASCII grid (.asc) -----------------------------------------------

// Contents of a grid file: header plus cell values in file order (first row
// is the northernmost). Cells equal to the NODATA marker are rejected at
// parse time, so `heights` never contains the marker.
struct GridDem {
  long ncols = 0;
  long nrows = 0;
  Rat xllcorner, yllcorner;
  Rat cellsize;
  std::optional<Rat> nodata;
  std::vector<std::vector<Rat>> heights;

  bool operator==(const GridDem& o) const;
};

GridDem parse_esri_grid(std::string_view text);
std::string serialize_esri_grid(const GridDem& d);

// Triangulated terrain for the grid: unit-spaced gen_grid on heights divided
// by cellsize, i.e. a terrain exactly similar (uniform scale by cellsize) to
// the surface the file describes; prickliness, vertex classes and viewshed
// structure are invariant under that scaling. xllcorner/yllcorner are a pure
// translation and are dropped.
Terrain2D grid_dem_terrain(const GridDem& d,
                           DiagonalRule rule = DiagonalRule::LowerLeftUpperRight);

// --- file-level helpers ----------------------------------------------------

enum class TerrainFormat { Off, Polyline, EsriGrid };

// By extension: .off, .poly, .asc (case-insensitive). Nullopt otherwise.
std::optional<TerrainFormat> format_for_path(std::string_view path);

// Exactly one of t1/t2 is set.
struct LoadedTerrain {
  TerrainFormat format = TerrainFormat::Off;
  std::optional<Terrain1D> t1;
  std::optional<Terrain2D> t2;
};

// Reads and parses by extension (or forced format). Throws std::runtime_error
// for unreadable files / unknown extensions, ParseError / ValidationError for
// bad content.
LoadedTerrain load_terrain_file(const std::string& path,
                                std::optional<TerrainFormat> format = std::nullopt,
                                DiagonalRule rule = DiagonalRule::LowerLeftUpperRight);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// --- CSV / PGM writers ------------------------------------------------------

// Long-format CSV: east_offset_deg,north_offset_deg,local_maxima -- one row
// per cell in storage order (north offset descending, east ascending).
std::string heatmap_csv(const DirectionGrid& g);

// 8-bit PGM (P2) of the grid, values scaled to 0..255 with the true maximum
// and the grid parameters recorded in a '#' comment line.
std::string heatmap_pgm(const DirectionGrid& g);

std::string viewshed_stats_csv_header();
std::string viewshed_stats_csv_row(const std::string& terrain_id,
                                   const std::string& viewpoint_id,
                                   const ViewshedStats& s, long prickliness,
                                   long n);

// Minimal CSV field escaping (RFC 4180 quoting when needed).
std::string csv_field(std::string_view s);

} // namespace prickle
