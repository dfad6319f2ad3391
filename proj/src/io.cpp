#include "latinhib/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "latinhib/errors.hpp"

namespace latinhib {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw FileError("failed writing '" + path.string() + "'");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delim, start);
    cells.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> lines;
  std::string_view rest(text);
  std::size_t number = 0;
  while (!rest.empty()) {
    ++number;
    const auto pos = rest.find('\n');
    const auto line = rest.substr(0, pos);
    if (!trim(line).empty()) lines.push_back({number, line});
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  return lines;
}

[[noreturn]] void parse_error(const std::filesystem::path& path, std::size_t line,
                              const std::string& what) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
}

// Uniform double in [0, 1) from the top 53 bits of one generator output.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit_uniform(rng);  // (0, 1]
  const double u2 = unit_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(sq);
}

ordered_json plateau_json(const Plateau& p) {
  ordered_json j;
  j["k"] = p.k;
  j["t_start"] = p.t_start;
  j["t_end"] = p.t_end;
  j["width"] = p.width;
  j["sample_count"] = p.sample_count;
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

PointsTable read_points_csv(const std::filesystem::path& path, bool has_header,
                            std::optional<std::size_t> label_column) {
  const std::string text = read_text(path);
  auto lines = content_lines(text);
  if (has_header && !lines.empty()) lines.erase(lines.begin());
  if (lines.empty()) parse_error(path, 1, "no data rows");

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::size_t width = 0;
  for (const Line& line : lines) {
    const auto cells = split(line.text, ',');
    if (rows.empty()) {
      width = cells.size();
      if (label_column && *label_column >= width) {
        parse_error(path, line.number,
                    "label column " + std::to_string(*label_column) + " out of range");
      }
      if (width - (label_column ? 1 : 0) == 0) parse_error(path, line.number, "no feature columns");
    } else if (cells.size() != width) {
      parse_error(path, line.number,
                  "expected " + std::to_string(width) + " columns, found " +
                      std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (label_column && c == *label_column) {
        labels.emplace_back(cells[c]);
        continue;
      }
      const auto value = parse_number(cells[c]);
      if (!value) {
        parse_error(path, line.number,
                    "column " + std::to_string(c) + ": '" + std::string(cells[c]) +
                        "' is not a finite number");
      }
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }

  PointsTable table{PointSet(rows), std::nullopt};
  if (label_column) table.labels = std::move(labels);
  return table;
}

DistanceMatrix read_distance_csv(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto lines = content_lines(text);
  if (lines.empty()) parse_error(path, 1, "empty distance matrix");

  const std::size_t n = lines.size();
  SquareMatrix raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cells = split(lines[i].text, ',');
    if (cells.size() != n) {
      parse_error(path, lines[i].number,
                  "matrix is not square: " + std::to_string(n) + " rows but " +
                      std::to_string(cells.size()) + " columns");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto value = parse_number(cells[j]);
      if (!value) {
        parse_error(path, lines[i].number,
                    "column " + std::to_string(j) + ": '" + std::string(cells[j]) +
                        "' is not a finite number");
      }
      raw(i, j) = *value;
    }
  }

  const auto where = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  constexpr double kSymmetryTol = 1e-9;
  constexpr double kDiagonalTol = 1e-12;
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (raw(i, j) < 0.0) {
        throw InputError(path.string() + ": negative distance " + format_double(raw(i, j)) +
                         " at " + where(i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (raw(i, i) > kDiagonalTol) {
      throw InputError(path.string() + ": nonzero diagonal " + format_double(raw(i, i)) +
                       " at " + where(i, i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = raw(i, j);
      const double b = raw(j, i);
      if (std::abs(a - b) > kSymmetryTol * std::max(a, b)) {
        throw InputError(path.string() + ": asymmetric entries at " + where(i, j) + "/" +
                         where(j, i) + " (" + format_double(a) + " vs " + format_double(b) +
                         ")");
      }
      d(i, j) = d(j, i) = a == b ? a : 0.5 * (a + b);
    }
  }
  return DistanceMatrix(std::move(d));
}

void BlobSpec::validate() const {
  if (clusters < 1) throw ParameterError("clusters must be at least 1");
  if (points_per_cluster < 1) throw ParameterError("points per cluster must be at least 1");
  if (dim < 1) throw ParameterError("dimension must be at least 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be positive");
  if (!(center_box >= 0.0) || !std::isfinite(center_box)) {
    throw ParameterError("center box half-width must be finite and >= 0");
  }
  if (!(min_center_separation >= 0.0) || !std::isfinite(min_center_separation)) {
    throw ParameterError("minimum center separation must be finite and >= 0");
  }
}

BlobData gen_blobs(const BlobSpec& spec) {
  spec.validate();
  constexpr std::size_t kDrawsPerCenter = 10000;
  std::mt19937_64 rng(spec.seed);

  std::vector<std::vector<double>> centers;
  centers.reserve(spec.clusters);
  while (centers.size() < spec.clusters) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kDrawsPerCenter && !placed; ++attempt) {
      std::vector<double> c(spec.dim);
      for (double& x : c) x = spec.center_box * (2.0 * unit_uniform(rng) - 1.0);
      placed = std::all_of(centers.begin(), centers.end(), [&](const auto& other) {
        return euclidean(c, other) >= spec.min_center_separation;
      });
      if (placed) centers.push_back(std::move(c));
    }
    if (!placed) {
      throw GenerationError("could not place center " + std::to_string(centers.size()) +
                            " at separation " + format_double(spec.min_center_separation) +
                            " inside box half-width " + format_double(spec.center_box));
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> labels;
  rows.reserve(spec.clusters * spec.points_per_cluster);
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    for (std::size_t p = 0; p < spec.points_per_cluster; ++p) {
      std::vector<double> x(spec.dim);
      for (std::size_t k = 0; k < spec.dim; ++k) {
        x[k] = centers[c][k] + spec.sigma * standard_normal(rng);
      }
      rows.push_back(std::move(x));
      labels.push_back(c);
    }
  }
  return {PointSet(rows), std::move(labels), std::move(centers)};
}

void write_points_csv(const PointSet& points, const std::vector<std::string>& labels,
                      const std::filesystem::path& path) {
  if (!labels.empty() && labels.size() != points.size()) {
    throw ParameterError("label count does not match point count");
  }
  std::string text;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto row = points[i];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) text += ',';
      text += format_double(row[k]);
    }
    if (!labels.empty()) text += ',' + labels[i];
    text += '\n';
  }
  write_text(path, text);
}

std::string result_to_json(const ClusteringResult& result) {
  ordered_json j;
  j["t"] = result.t;
  j["alpha"] = result.alpha;
  j["k"] = result.k;
  j["centers"] = result.centers;
  j["labels"] = result.labels;
  j["class_sizes"] = result.class_sizes;
  j["iters"] = result.iters;
  return j.dump() + "\n";
}

ClusteringResult result_from_json(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    ClusteringResult result;
    result.t = j.at("t").get<double>();
    result.alpha = j.at("alpha").get<double>();
    result.k = j.at("k").get<std::size_t>();
    result.centers = j.at("centers").get<std::vector<std::size_t>>();
    result.labels = j.at("labels").get<std::vector<std::size_t>>();
    result.class_sizes = j.at("class_sizes").get<std::vector<std::size_t>>();
    result.iters = j.at("iters").get<std::size_t>();
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed result document: ") + e.what());
  }
}

void write_result_json(const ClusteringResult& result, const std::filesystem::path& path) {
  write_text(path, result_to_json(result));
}

ClusteringResult read_result_json(const std::filesystem::path& path) {
  return result_from_json(read_text(path));
}

std::string plateaus_to_json(const std::vector<Plateau>& plateaus, const PlateauReportMeta& meta) {
  ordered_json j;
  j["use_filtered"] = meta.use_filtered;
  j["min_class_size"] = meta.min_class_size;
  j["alpha"] = meta.alpha;
  j["max_distance"] = meta.max_distance;
  j["grid_mode"] = meta.grid_mode;
  j["grid_points"] = meta.grid_points;
  j["plateaus"] = ordered_json::array();
  for (const Plateau& p : plateaus) j["plateaus"].push_back(plateau_json(p));
  return j.dump(2) + "\n";
}

void write_plateaus_json(const std::vector<Plateau>& plateaus, const PlateauReportMeta& meta,
                         const std::filesystem::path& path) {
  write_text(path, plateaus_to_json(plateaus, meta));
}

std::string curve_to_tsv(const SweepCurve& curve) {
  std::string text = "t\tk_raw\tk_filtered\tconverged\n";
  for (const SweepSample& s : curve.samples) {
    text += format_double(s.t);
    text += '\t' + std::to_string(s.k_raw);
    text += '\t' + std::to_string(s.k_filtered);
    text += s.converged ? "\t1\n" : "\t0\n";
  }
  return text;
}

SweepCurve curve_from_tsv(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty() || trim(lines.front().text) != "t\tk_raw\tk_filtered\tconverged") {
    throw InputError("curve file is missing its header line");
  }
  SweepCurve curve;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i].text, '\t');
    const auto t = cells.size() == 4 ? parse_number(cells[0]) : std::nullopt;
    const auto k_raw = cells.size() == 4 ? parse_number(cells[1]) : std::nullopt;
    const auto k_filtered = cells.size() == 4 ? parse_number(cells[2]) : std::nullopt;
    if (!t || !k_raw || !k_filtered || (cells[3] != "0" && cells[3] != "1")) {
      throw InputError("malformed curve row at line " + std::to_string(lines[i].number));
    }
    curve.samples.push_back({*t, static_cast<std::size_t>(*k_raw),
                             static_cast<std::size_t>(*k_filtered), cells[3] == "1"});
  }
  return curve;
}

void write_curve_tsv(const SweepCurve& curve, const std::filesystem::path& path) {
  write_text(path, curve_to_tsv(curve));
}

SweepCurve read_curve_tsv(const std::filesystem::path& path) {
  return curve_from_tsv(read_text(path));
}

void render_curve_svg(const SweepCurve& curve, const std::vector<Plateau>& plateaus,
                      const std::filesystem::path& path) {
  write_text(path, curve_to_svg(curve, plateaus));
}

}  // namespace latinhib
