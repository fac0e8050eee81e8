#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtherm {

enum class FileFormat { csv, json };

struct Column {
  std::string name;
  std::vector<double> values;

  bool operator==(const Column&) const = default;
};

// Flat column-oriented dataset with a metadata header. Floats serialize with
// 17 significant digits, so parse(serialize(x)) == x.
struct DatasetFile {
  std::string tool_version;
  std::map<std::string, std::string> params;
  std::vector<Column> columns;

  bool operator==(const DatasetFile&) const = default;
};

std::string format_double(double v);

std::string to_csv(const DatasetFile& d);
std::string to_json(const DatasetFile& d);
DatasetFile parse_csv(const std::string& text);
DatasetFile parse_json(const std::string& text);

std::string serialize(const DatasetFile& d, FileFormat f);

// "pi", "pi/2", "0.25*pi", "1.5pi" or a plain real.
double parse_real_token(const std::string& token);

// "lo:hi:count" (linear) or "lo:hi:count:log"; endpoints accept angle tokens.
std::vector<double> parse_grid_spec(const std::string& spec);

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);

struct FigureOverrides {
  std::optional<double> tau_max;  // upper end of a tau axis
  std::optional<int> points;      // samples along the swept axis
};

// Named recipes fig1a, fig1b, fig2, fig3, fig4a, fig4b, fig5a, fig5b with
// the published parameter grids baked in.
DatasetFile make_figure(const std::string& name,
                        const FigureOverrides& ov = {});

const std::vector<std::string>& figure_names();

}  // namespace qtherm
