#include "qpde/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qpde/errors.hpp"

namespace qpde::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
  impl_->out.open(path);
  if (!impl_->out) throw ConfigError("cannot open '" + path + "' for writing");
  for (size_t i = 0; i < header.size(); ++i)
    impl_->out << header[i] << (i + 1 < header.size() ? "," : "");
  impl_->out << "\n";
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    impl_->out << fmt(values[i]) << (i + 1 < values.size() ? "," : "");
  impl_->out << "\n";
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << "\n"; }

void write_snapshots_csv(const std::string& path, const std::vector<OrbitSnapshot>& snaps) {
  if (snaps.empty()) throw ConfigError("no snapshots to write");
  std::vector<std::string> header{"t"};
  for (int i = 1; i <= snaps.front().base.dim(); ++i)
    header.push_back("theta_" + std::to_string(i));
  for (int j = 0; j < snaps.front().profile.size(); ++j)
    header.push_back("x_" + std::to_string(j));
  CsvWriter w(path, header);
  std::vector<double> row;
  for (const auto& s : snaps) {
    row.clear();
    row.push_back(s.t);
    for (double th : s.base.theta) row.push_back(th);
    for (double v : s.profile.values()) row.push_back(v);
    w.row(row);
  }
}

void write_snapshots_bin(const std::string& path, const std::vector<OrbitSnapshot>& snaps) {
  if (snaps.empty()) throw ConfigError("no snapshots to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  auto put64 = [&](int64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  put64(static_cast<int64_t>(snaps.size()));
  put64(snaps.front().base.dim());
  put64(snaps.front().profile.size());
  auto putd = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  for (const auto& s : snaps) {
    putd(s.t);
    for (double th : s.base.theta) putd(th);
    for (double v : s.profile.values()) putd(v);
  }
}

Raster::Raster(int width, int height, unsigned char r, unsigned char g, unsigned char b)
    : w_(width), h_(height), pix_(static_cast<size_t>(width) * height * 3) {
  for (int i = 0; i < width * height; ++i) {
    pix_[static_cast<size_t>(3 * i)] = r;
    pix_[static_cast<size_t>(3 * i + 1)] = g;
    pix_[static_cast<size_t>(3 * i + 2)] = b;
  }
}

void Raster::set(int x, int y, unsigned char r, unsigned char g, unsigned char b) {
  if (x < 0 || x >= w_ || y < 0 || y >= h_) return;
  const size_t i = 3 * (static_cast<size_t>(y) * w_ + x);
  pix_[i] = r;
  pix_[i + 1] = g;
  pix_[i + 2] = b;
}

void Raster::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "P6\n" << w_ << " " << h_ << "\n255\n";
  out.write(reinterpret_cast<const char*>(pix_.data()), static_cast<std::streamsize>(pix_.size()));
}

void write_heatmap_ppm(const std::string& path, const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw ConfigError("empty heatmap data");
  double amp = 0.0;
  for (const auto& r : rows)
    for (double v : r) amp = std::max(amp, std::abs(v));
  if (amp == 0.0) amp = 1.0;
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(rows.front().size());
  Raster img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double s = std::clamp(rows[static_cast<size_t>(y)][static_cast<size_t>(x)] / amp,
                                  -1.0, 1.0);
      unsigned char r, g, b;
      if (s >= 0) {
        r = 255;
        g = static_cast<unsigned char>(255 * (1.0 - s));
        b = static_cast<unsigned char>(255 * (1.0 - s));
      } else {
        r = static_cast<unsigned char>(255 * (1.0 + s));
        g = static_cast<unsigned char>(255 * (1.0 + s));
        b = 255;
      }
      img.set(x, y, r, g, b);
    }
  img.save(path);
}

void write_lineplot_ppm(const std::string& path, const std::vector<double>& x,
                        const std::vector<std::vector<double>>& series) {
  const int w = 640, h = 400;
  Raster img(w, h);
  if (x.size() < 2) throw ConfigError("line plot needs at least two points");
  double ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (double v : s) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (ymax <= ymin) {
    ymax = ymin + 1.0;
    ymin -= 1.0;
  }
  const double x0 = x.front(), x1 = x.back();
  const unsigned char palette[3][3] = {{200, 30, 30}, {30, 30, 200}, {30, 150, 30}};
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const auto* col = palette[si % 3];
    for (size_t i = 0; i + 1 < s.size() && i + 1 < x.size(); ++i) {
      const int xa = static_cast<int>((x[i] - x0) / (x1 - x0) * (w - 1));
      const int xb = static_cast<int>((x[i + 1] - x0) / (x1 - x0) * (w - 1));
      const int ya = static_cast<int>((1.0 - (s[i] - ymin) / (ymax - ymin)) * (h - 1));
      const int yb = static_cast<int>((1.0 - (s[i + 1] - ymin) / (ymax - ymin)) * (h - 1));
      const int steps = std::max(std::abs(xb - xa), std::abs(yb - ya)) + 1;
      for (int k = 0; k <= steps; ++k) {
        const int px = xa + (xb - xa) * k / steps;
        const int py = ya + (yb - ya) * k / steps;
        img.set(px, py, col[0], col[1], col[2]);
      }
    }
  }
  img.save(path);
}

void write_histogram_ppm(const std::string& path, const std::vector<double>& values, int bins) {
  std::vector<int> counts(static_cast<size_t>(bins), 0);
  for (double v : values) {
    int b = static_cast<int>(v * bins);
    if (b >= 0 && b < bins) ++counts[static_cast<size_t>(b)];
  }
  const int maxc = std::max(1, *std::max_element(counts.begin(), counts.end()));
  const int w = 640, h = 320;
  Raster img(w, h);
  for (int b = 0; b < bins; ++b) {
    const int xa = b * w / bins, xb = (b + 1) * w / bins;
    const int top = h - 1 - counts[static_cast<size_t>(b)] * (h - 2) / maxc;
    for (int x = xa; x < xb; ++x)
      for (int y = top; y < h; ++y) img.set(x, y, 60, 60, 180);
  }
  img.save(path);
}

}  // namespace qpde::io
