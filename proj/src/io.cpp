#include "prickle/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace prickle {

namespace {

std::string with_pos(const std::string& msg, int line, int col) {
  std::ostringstream os;
  os << "line " << line << ", column " << col << ": " << msg;
  return os.str();
}

// Whitespace-delimited token scanner with 1-based line/column tracking and
// '#'-to-end-of-line comments.
class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Token {
    std::string_view text;
    int line = 0;
    int col = 0;
  };

  std::optional<Token> next() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    Token tok;
    tok.line = line_;
    tok.col = col_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '#')
      advance();
    tok.text = text_.substr(start, pos_ - start);
    return tok;
  }

  Token require(const char* what) {
    std::optional<Token> t = next();
    if (!t) throw ParseError(std::string("unexpected end of file: expected ") + what, line_, col_);
    return *t;
  }

  int line() const { return line_; }
  int col() const { return col_; }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Rat require_rat(Lexer& lx, const char* what) {
  const Lexer::Token t = lx.require(what);
  std::optional<Rat> q = parse_rat(t.text);
  if (!q)
    throw ParseError("non-numeric token '" + std::string(t.text) + "' (expected " + what + ")",
                     t.line, t.col);
  return *q;
}

long require_long(Lexer& lx, const char* what, long lo, long hi) {
  const Lexer::Token t = lx.require(what);
  std::optional<Rat> q = parse_rat(t.text);
  std::optional<std::int64_t> v = q ? as_int64(*q) : std::nullopt;
  if (!v || (q->get_den() != 1))
    throw ParseError("expected integer " + std::string(what) + ", got '" + std::string(t.text) + "'",
                     t.line, t.col);
  if (*v < lo || *v > hi)
    throw ParseError(std::string(what) + " out of range: " + std::string(t.text), t.line, t.col);
  return static_cast<long>(*v);
}

void require_eof(Lexer& lx) {
  std::optional<Lexer::Token> t = lx.next();
  if (t)
    throw ParseError("trailing content '" + std::string(t->text) + "'", t->line, t->col);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

} // namespace

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : std::runtime_error(with_pos(msg, line_, col_)), line(line_), col(col_) {}

// --- 1.5D polyline ----------------------------------------------------------

Terrain1D parse_polyline(std::string_view text) {
  Lexer lx(text);
  std::vector<Vec2> pts;
  while (true) {
    std::optional<Lexer::Token> t = lx.next();
    if (!t) break;
    std::optional<Rat> x = parse_rat(t->text);
    if (!x)
      throw ParseError("non-numeric token '" + std::string(t->text) + "' (expected x coordinate)",
                       t->line, t->col);
    Rat z = require_rat(lx, "height for the preceding x coordinate");
    pts.emplace_back(std::move(*x), std::move(z));
  }
  return validate_terrain1d(std::move(pts));
}

std::string serialize_polyline(const Terrain1D& t) {
  std::ostringstream os;
  for (const Vec2& v : t.vertices) os << format_rat(v.x) << ' ' << format_rat(v.y) << '\n';
  return os.str();
}

// --- OFF ---------------------------------------------------------------------

Terrain2D parse_off(std::string_view text) {
  Lexer lx(text);
  const Lexer::Token header = lx.require("OFF header");
  if (header.text != "OFF")
    throw ParseError("malformed header: expected 'OFF', got '" + std::string(header.text) + "'",
                     header.line, header.col);
  const long nv = require_long(lx, "vertex count", 0, 100000000);
  const long nf = require_long(lx, "face count", 0, 100000000);
  require_long(lx, "edge count", 0, std::numeric_limits<long>::max());

  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    Rat x = require_rat(lx, "vertex x");
    Rat y = require_rat(lx, "vertex y");
    Rat z = require_rat(lx, "vertex z");
    verts.push_back({std::move(x), std::move(y), std::move(z)});
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    const Lexer::Token arity_tok = lx.require("face vertex count");
    std::optional<Rat> ar = parse_rat(arity_tok.text);
    if (!ar || ar->get_den() != 1)
      throw ParseError("expected face vertex count, got '" + std::string(arity_tok.text) + "'",
                       arity_tok.line, arity_tok.col);
    if (*ar != 3)
      throw ParseError("only triangular faces are supported (face has " +
                           std::string(arity_tok.text) + " vertices)",
                       arity_tok.line, arity_tok.col);
    std::array<int, 3> tri{};
    for (int j = 0; j < 3; ++j)
      tri[j] = static_cast<int>(require_long(lx, "vertex index", 0, nv - 1));
    tris.push_back(tri);
  }
  require_eof(lx);
  return validate_terrain2d(std::move(verts), std::move(tris));
}

std::string serialize_off(const Terrain2D& t) {
  std::ostringstream os;
  os << "OFF\n" << t.vertices.size() << ' ' << t.triangles.size() << " 0\n";
  for (const Vec3& v : t.vertices)
    os << format_rat(v.x) << ' ' << format_rat(v.y) << ' ' << format_rat(v.z) << '\n';
  for (const std::array<int, 3>& f : t.triangles)
    os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  return os.str();
}

// --- ESRI ASCII grid ----------------------------------------------------------

bool GridDem::operator==(const GridDem& o) const {
  return ncols == o.ncols && nrows == o.nrows && xllcorner == o.xllcorner &&
         yllcorner == o.yllcorner && cellsize == o.cellsize && nodata == o.nodata &&
         heights == o.heights;
}

GridDem parse_esri_grid(std::string_view text) {
  Lexer lx(text);
  GridDem d;
  bool have_ncols = false, have_nrows = false, have_cellsize = false;

  // Header: "key value" pairs until the first numeric token, which starts the
  // cell data.
  std::optional<Lexer::Token> t = lx.next();
  while (t && !parse_rat(t->text)) {
    const std::string key = lower(t->text);
    if (key == "ncols") {
      d.ncols = require_long(lx, "ncols", 2, 1000000);
      have_ncols = true;
    } else if (key == "nrows") {
      d.nrows = require_long(lx, "nrows", 2, 1000000);
      have_nrows = true;
    } else if (key == "xllcorner" || key == "xllcenter") {
      d.xllcorner = require_rat(lx, "xllcorner");
    } else if (key == "yllcorner" || key == "yllcenter") {
      d.yllcorner = require_rat(lx, "yllcorner");
    } else if (key == "cellsize") {
      d.cellsize = require_rat(lx, "cellsize");
      if (sign(d.cellsize) <= 0)
        throw ParseError("cellsize must be positive", t->line, t->col);
      have_cellsize = true;
    } else if (key == "nodata_value") {
      d.nodata = require_rat(lx, "NODATA_value");
    } else {
      throw ParseError("malformed header: unknown key '" + std::string(t->text) + "'", t->line,
                       t->col);
    }
    t = lx.next();
  }
  if (!have_ncols || !have_nrows || !have_cellsize)
    throw ParseError("malformed header: ncols, nrows and cellsize are required", lx.line(),
                     lx.col());

  d.heights.assign(static_cast<std::size_t>(d.nrows), {});
  for (long r = 0; r < d.nrows; ++r) {
    std::vector<Rat>& row = d.heights[static_cast<std::size_t>(r)];
    row.reserve(static_cast<std::size_t>(d.ncols));
    for (long c = 0; c < d.ncols; ++c) {
      if (!t) {
        std::ostringstream os;
        os << "non-rectangular grid: expected " << d.nrows << "x" << d.ncols << " = "
           << d.nrows * d.ncols << " cells, file ends after " << r * d.ncols + c;
        throw ParseError(os.str(), lx.line(), lx.col());
      }
      std::optional<Rat> z = parse_rat(t->text);
      if (!z)
        throw ParseError("non-numeric cell '" + std::string(t->text) + "'", t->line, t->col);
      if (d.nodata && *z == *d.nodata) {
        std::ostringstream os;
        os << "NODATA cell at grid row " << r << ", column " << c
           << " (holes are rejected, not interpolated)";
        throw ParseError(os.str(), t->line, t->col);
      }
      row.push_back(std::move(*z));
      t = lx.next();
    }
  }
  if (t)
    throw ParseError("trailing content '" + std::string(t->text) + "' after the last cell",
                     t->line, t->col);
  return d;
}

std::string serialize_esri_grid(const GridDem& d) {
  std::ostringstream os;
  os << "ncols " << d.ncols << '\n';
  os << "nrows " << d.nrows << '\n';
  os << "xllcorner " << format_rat(d.xllcorner) << '\n';
  os << "yllcorner " << format_rat(d.yllcorner) << '\n';
  os << "cellsize " << format_rat(d.cellsize) << '\n';
  if (d.nodata) os << "NODATA_value " << format_rat(*d.nodata) << '\n';
  for (const std::vector<Rat>& row : d.heights) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ' ';
      os << format_rat(row[c]);
    }
    os << '\n';
  }
  return os.str();
}

Terrain2D grid_dem_terrain(const GridDem& d, DiagonalRule rule) {
  std::vector<std::vector<Rat>> heights(static_cast<std::size_t>(d.nrows));
  for (long r = 0; r < d.nrows; ++r) {
    // gen_grid rows increase with y; the file's first row is the northernmost.
    const std::vector<Rat>& src = d.heights[static_cast<std::size_t>(d.nrows - 1 - r)];
    std::vector<Rat>& dst = heights[static_cast<std::size_t>(r)];
    dst.reserve(src.size());
    for (const Rat& z : src) dst.push_back(z / d.cellsize);
  }
  return gen_grid(heights, rule);
}

// --- file-level helpers ---------------------------------------------------------

std::optional<TerrainFormat> format_for_path(std::string_view path) {
  const std::size_t dot = path.find_last_of('.');
  if (dot == std::string_view::npos) return std::nullopt;
  const std::string ext = lower(path.substr(dot + 1));
  if (ext == "off") return TerrainFormat::Off;
  if (ext == "poly") return TerrainFormat::Polyline;
  if (ext == "asc") return TerrainFormat::EsriGrid;
  return std::nullopt;
}

LoadedTerrain load_terrain_file(const std::string& path, std::optional<TerrainFormat> format,
                                DiagonalRule rule) {
  if (!format) format = format_for_path(path);
  if (!format)
    throw std::runtime_error(path + ": unknown terrain format (expected .off, .poly or .asc)");
  const std::string text = read_file(path);
  LoadedTerrain out;
  out.format = *format;
  switch (*format) {
  case TerrainFormat::Off:
    out.t2 = parse_off(text);
    break;
  case TerrainFormat::Polyline:
    out.t1 = parse_polyline(text);
    break;
  case TerrainFormat::EsriGrid:
    out.t2 = grid_dem_terrain(parse_esri_grid(text), rule);
    break;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading file: " + path);
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("error writing file: " + path);
}

// --- CSV / PGM ---------------------------------------------------------------------

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string heatmap_csv(const DirectionGrid& g) {
  std::ostringstream os;
  os << "east_offset_deg,north_offset_deg,local_maxima\n";
  for (int r = 0; r < g.res; ++r) {
    const Rat& north = g.offsets[static_cast<std::size_t>(g.res - 1 - r)];
    for (int c = 0; c < g.res; ++c) {
      os << format_rat(g.offsets[static_cast<std::size_t>(c)]) << ',' << format_rat(north) << ','
         << g.values[static_cast<std::size_t>(r) * g.res + c] << '\n';
    }
  }
  return os.str();
}

std::string heatmap_pgm(const DirectionGrid& g) {
  long maxv = 0;
  for (long v : g.values) maxv = std::max(maxv, v);
  std::ostringstream os;
  os << "P2\n";
  os << "# max " << maxv << " res " << g.res << " max_offset_deg " << format_rat(g.max_offset_deg)
     << " tan_denominator " << g.tan_denominator << '\n';
  os << g.res << ' ' << g.res << "\n255\n";
  for (int r = 0; r < g.res; ++r) {
    for (int c = 0; c < g.res; ++c) {
      const long v = g.values[static_cast<std::size_t>(r) * g.res + c];
      const long scaled = maxv == 0 ? 0 : (v * 255 + maxv / 2) / maxv;
      if (c) os << ' ';
      os << scaled;
    }
    os << '\n';
  }
  return os.str();
}

std::string viewshed_stats_csv_header() {
  return "terrain_id,viewpoint_id,type1,type2,type3,total,prickliness,n\n";
}

std::string viewshed_stats_csv_row(const std::string& terrain_id, const std::string& viewpoint_id,
                                   const ViewshedStats& s, long prickliness, long n) {
  std::ostringstream os;
  os << csv_field(terrain_id) << ',' << csv_field(viewpoint_id) << ',' << s.type1 << ','
     << s.type2 << ',' << s.type3 << ',' << s.total << ',' << prickliness << ',' << n << '\n';
  return os.str();
}

} // namespace prickle
