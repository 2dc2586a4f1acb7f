#pragma once

#include <string>
#include <vector>

#include "qpde/grid.hpp"

namespace qpde::io {

// All numeric output is printed with %.17g so that artifacts round-trip and
// byte-compare across reruns.
std::string fmt(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  struct Impl;
  Impl* impl_;
};

// Snapshot table: t,theta_1..theta_k,x_0..x_{n-1}.
void write_snapshots_csv(const std::string& path, const std::vector<OrbitSnapshot>& snaps);

// Little-endian binary dump: int64 count, int64 k, int64 n, then per snapshot
// t, theta[0..k), values[0..n) as float64.
void write_snapshots_bin(const std::string& path, const std::vector<OrbitSnapshot>& snaps);

// Minimal plotting into binary PPM (P6).
class Raster {
 public:
  Raster(int width, int height, unsigned char r = 255, unsigned char g = 255,
         unsigned char b = 255);
  void set(int x, int y, unsigned char r, unsigned char g, unsigned char b);
  void save(const std::string& path) const;
  int width() const { return w_; }
  int height() const { return h_; }

 private:
  int w_, h_;
  std::vector<unsigned char> pix_;
};

// Space-time heatmap of |rows x cols| data (row 0 at the top), diverging
// blue-white-red colormap centered at 0.
void write_heatmap_ppm(const std::string& path, const std::vector<std::vector<double>>& rows);

// Simple line plot of one or more series over a shared x axis.
void write_lineplot_ppm(const std::string& path, const std::vector<double>& x,
                        const std::vector<std::vector<double>>& series);

// Histogram of values in [0, 1) with the given number of bins.
void write_histogram_ppm(const std::string& path, const std::vector<double>& values, int bins);

}  // namespace qpde::io
