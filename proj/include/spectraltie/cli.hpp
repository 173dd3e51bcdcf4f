#pragma once

// Command-line surface: spectrum, curves, count and compare subcommands.

#include <iosfwd>
#include <string>
#include <vector>

#include "spectraltie/scalar_maps.hpp"
#include "spectraltie/spectrum_types.hpp"

namespace spectraltie::cli {

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitNumerical = 3 };

// One row of the eigenvalue table.
struct Row {
  double re = 0;
  double im = 0;
  std::string method;
  int index = -1;
  double residual = 0;
  bool resolved = true;
};

// Header re,im,method,index,residual,resolved; reals as %.17g.
std::string format_csv(const std::vector<Row>& rows);
std::vector<Row> parse_csv(const std::string& text);

// Header t,gamma,re,im,side.
std::string format_curves_csv(const std::vector<CurveSample>& samples);
std::vector<CurveSample> parse_curves_csv(const std::string& text);

// {params, eigenvalues:[{re,im,method,index,residual,resolved}], curves:[{t,gamma,re,im,side}]}
std::string format_json(const ProblemParams& p, const std::string& problem, const std::vector<Row>& rows,
                        const std::vector<CurveSample>& curves);

// Standalone scatter of the table, one marker shape per method. Depends on
// the CSV text only.
std::string svg_from_csv(const std::string& csv);
// Both strands as polylines, from the curves CSV text only.
std::string svg_from_curves_csv(const std::string& csv);

// Full command line, argv[0] included. Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectraltie::cli
