#pragma once

// ASCII PCD subset: VERSION / FIELDS x y z / SIZE / TYPE F / COUNT / WIDTH / HEIGHT /
// [VIEWPOINT] / POINTS / DATA ascii, then one "x y z" row per point. '#' lines are comments.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ara/cloud.hpp"
#include "ara/errors.hpp"

namespace ara::pcd {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline bool parse_double(std::string_view tok, double& out)
{
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

inline bool parse_count(std::string_view tok, std::size_t& out)
{
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace detail

inline cloud::PointCloud read_pcd(std::istream& in)
{
  std::string line;
  std::size_t lineno = 0;
  std::size_t declared = 0;
  bool have_points = false, have_fields = false;

  auto expect_values = [&](const std::vector<std::string_view>& tok, std::string_view value) {
    if (tok.size() != 4 || tok[1] != value || tok[2] != value || tok[3] != value)
      throw ParseError(lineno, std::string(tok[0]) + " must be '" + std::string(value) + " " +
                                   std::string(value) + " " + std::string(value) + "'");
  };

  for (;;) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, "unexpected end of header (missing DATA)");
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    const std::string_view key = tok[0];
    if (key == "VERSION" || key == "VIEWPOINT") {
      continue;
    } else if (key == "FIELDS") {
      if (tok.size() != 4 || tok[1] != "x" || tok[2] != "y" || tok[3] != "z")
        throw ParseError(lineno, "FIELDS must be 'x y z'");
      have_fields = true;
    } else if (key == "SIZE") {
      if (tok.size() != 4) throw ParseError(lineno, "SIZE needs 3 entries");
    } else if (key == "TYPE") {
      expect_values(tok, "F");
    } else if (key == "COUNT") {
      expect_values(tok, "1");
    } else if (key == "WIDTH" || key == "HEIGHT") {
      std::size_t v = 0;
      if (tok.size() != 2 || !detail::parse_count(tok[1], v))
        throw ParseError(lineno, std::string(key) + " needs one integer");
    } else if (key == "POINTS") {
      if (tok.size() != 2 || !detail::parse_count(tok[1], declared))
        throw ParseError(lineno, "POINTS needs one integer");
      have_points = true;
    } else if (key == "DATA") {
      if (tok.size() != 2) throw ParseError(lineno, "DATA needs one value");
      if (tok[1] != "ascii") throw ParseError(lineno, "only DATA ascii is supported, got '" + std::string(tok[1]) + "'");
      break;
    } else {
      throw ParseError(lineno, "unknown header key '" + std::string(key) + "'");
    }
  }
  if (!have_fields) throw ParseError(lineno, "header lacks FIELDS");
  if (!have_points) throw ParseError(lineno, "header lacks POINTS");

  std::vector<Point3> pts;
  pts.reserve(declared);
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ParseError(lineno, "expected 3 values, got " + std::to_string(tok.size()));
    Point3 p;
    for (int k = 0; k < 3; ++k)
      if (!detail::parse_double(tok[k], p[k]))
        throw ParseError(lineno, "non-numeric value '" + std::string(tok[k]) + "'");
    if (pts.size() == declared)
      throw ParseError(lineno, "more rows than POINTS " + std::to_string(declared));
    pts.push_back(p);
  }
  if (pts.size() != declared)
    throw ParseError(lineno, "POINTS " + std::to_string(declared) + " but " + std::to_string(pts.size()) +
                                 " rows");
  return cloud::PointCloud(std::move(pts), cloud::Frame::Camera);
}

inline cloud::PointCloud load_cloud(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_pcd(in);
}

/// Coordinates are written with 9 fixed decimals, so write -> read -> write is byte-stable.
inline void write_pcd(std::ostream& out, const cloud::PointCloud& c)
{
  out << "# .PCD v0.7 - Point Cloud Data file format\n"
      << "VERSION 0.7\n"
      << "FIELDS x y z\n"
      << "SIZE 4 4 4\n"
      << "TYPE F F F\n"
      << "COUNT 1 1 1\n"
      << "WIDTH " << c.size() << "\n"
      << "HEIGHT 1\n"
      << "VIEWPOINT 0 0 0 1 0 0 0\n"
      << "POINTS " << c.size() << "\n"
      << "DATA ascii\n";
  char buf[128];
  for (const auto& p : c) {
    std::snprintf(buf, sizeof buf, "%.9f %.9f %.9f\n", p.x(), p.y(), p.z());
    out << buf;
  }
}

inline std::string to_pcd_string(const cloud::PointCloud& c)
{
  std::ostringstream os;
  write_pcd(os, c);
  return os.str();
}

inline void save_cloud(const std::string& path, const cloud::PointCloud& c)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_pcd(out, c);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace ara::pcd
