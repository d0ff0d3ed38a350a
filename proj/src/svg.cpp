#include "projcong/svg.hpp"

#include <cmath>
#include <sstream>

namespace projcong {

namespace {

constexpr double kPi = 3.14159265358979323846;

void lonlat(double x, double y, double z, double& lon, double& lat) {
  double r = std::sqrt(x * x + y * y + z * z);
  lon = std::atan2(y, x);
  lat = std::asin(z / r);
}

// plate-carree mapping into a 720x360 canvas
double px(double lon) { return (lon + kPi) / (2 * kPi) * 720.0; }
double py(double lat) { return (kPi / 2 - lat) / kPi * 360.0; }

}  // namespace

std::string arrangement_svg(const Arrangement& arr) {
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 720 360'>\n"
      << "<rect width='720' height='360' fill='white'/>\n";
  for (const auto& c : arr.circles) {
    // orthonormal basis of the circle plane, in doubles
    Frame fr = frame(c.normal);
    double s = std::sqrt(rat_to_double(fr.s)), t = std::sqrt(rat_to_double(fr.t));
    double b1[3] = {rat_to_double(fr.b1.x) / s, rat_to_double(fr.b1.y) / s,
                    rat_to_double(fr.b1.z) / s};
    double b2[3] = {rat_to_double(fr.b2.x) / t, rat_to_double(fr.b2.y) / t,
                    rat_to_double(fr.b2.z) / t};
    out << "<polyline fill='none' stroke='steelblue' stroke-width='0.7' points='";
    double prev_lon = 0;
    bool first = true;
    for (int k = 0; k <= 720; ++k) {
      double th = 2 * kPi * k / 720.0;
      double x = std::cos(th) * b1[0] + std::sin(th) * b2[0];
      double y = std::cos(th) * b1[1] + std::sin(th) * b2[1];
      double z = std::cos(th) * b1[2] + std::sin(th) * b2[2];
      double lon, lat;
      lonlat(x, y, z, lon, lat);
      if (!first && std::fabs(lon - prev_lon) > kPi / 2) {
        out << "' />\n<polyline fill='none' stroke='steelblue' stroke-width='0.7' points='";
      }
      out << px(lon) << "," << py(lat) << " ";
      prev_lon = lon;
      first = false;
    }
    out << "' />\n";
  }
  for (const auto& cell : arr.cells) {
    double lon, lat;
    lonlat(rat_to_double(cell.sample.x), rat_to_double(cell.sample.y),
           rat_to_double(cell.sample.z), lon, lat);
    out << "<circle cx='" << px(lon) << "' cy='" << py(lat)
        << "' r='2' fill='crimson'/>\n"
        << "<text x='" << px(lon) + 3 << "' y='" << py(lat)
        << "' font-size='6'>" << cell.id << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string planar_body_svg(const PlanarBody& body) {
  double rs = std::sqrt(rat_to_double(body.frame.s));
  double rt = std::sqrt(rat_to_double(body.frame.t));
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  std::vector<std::pair<double, double>> pts;
  for (const auto& w : body.vertices2d) {
    double x = rat_to_double(w.u) / rs, y = rat_to_double(w.v) / rt;
    pts.emplace_back(x, y);
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  double w = std::max(1e-9, maxx - minx), h = std::max(1e-9, maxy - miny);
  double pad = 0.05 * std::max(w, h);
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << minx - pad << " "
      << -(maxy + pad) << " " << w + 2 * pad << " " << h + 2 * pad << "'>\n<polygon points='";
  for (const auto& [x, y] : pts) out << x << "," << -y << " ";
  out << "' fill='lightsteelblue' stroke='navy' stroke-width='" << 0.01 * std::max(w, h)
      << "'/>\n";
  for (const auto& [x, y] : pts)
    out << "<circle cx='" << x << "' cy='" << -y << "' r='" << 0.015 * std::max(w, h)
        << "' fill='navy'/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace projcong
