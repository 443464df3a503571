#include "ihdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace ihdg {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace

Mesh Mesh::from_connectivity(std::vector<Point> vertices,
                             std::vector<std::array<int, 3>> elements) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.elements_ = std::move(elements);

  const auto nv = static_cast<int>(m.vertices_.size());
  m.areas_.resize(m.elements_.size());
  m.diameters_.resize(m.elements_.size());
  std::set<std::array<int, 3>> seen;
  for (std::size_t e = 0; e < m.elements_.size(); ++e) {
    const auto& tri = m.elements_[e];
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        throw MeshParseError("element " + std::to_string(e) + " references vertex " +
                             std::to_string(v) + " out of range");
      }
    }
    const auto& a = m.vertices_[tri[0]];
    const auto& b = m.vertices_[tri[1]];
    const auto& c = m.vertices_[tri[2]];
    const double area = signed_area(a, b, c);
    if (!(area > 0.0)) {
      throw InvertedElementError("element " + std::to_string(e) +
                                 " has non-positive signed area " + std::to_string(area));
    }
    auto key = tri;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      throw DuplicateElementError("element " + std::to_string(e) + " duplicates an earlier element");
    }
    m.areas_[e] = area;
    m.diameters_[e] = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
  }
  m.h_ = m.diameters_.empty() ? 0.0 : *std::max_element(m.diameters_.begin(), m.diameters_.end());

  // Faces are numbered in order of first appearance (element, local face).
  std::map<std::pair<int, int>, int> face_of_edge;
  m.element_faces_.resize(m.elements_.size());
  for (std::size_t e = 0; e < m.elements_.size(); ++e) {
    const auto& tri = m.elements_[e];
    for (int i = 0; i < 3; ++i) {
      const int va = tri[(i + 1) % 3];
      const int vb = tri[(i + 2) % 3];
      const auto key = std::minmax(va, vb);
      auto it = face_of_edge.find(key);
      if (it == face_of_edge.end()) {
        Face f;
        f.vertices = {va, vb};
        f.elements = {static_cast<int>(e), -1};
        f.local_index = {i, -1};
        const Point t = m.vertices_[vb] - m.vertices_[va];
        f.length = t.norm();
        // Counterclockwise element: outward normal is the tangent rotated clockwise.
        f.normal = Point(t.y(), -t.x()) / f.length;
        face_of_edge.emplace(key, static_cast<int>(m.faces_.size()));
        m.element_faces_[e][i] = static_cast<int>(m.faces_.size());
        m.faces_.push_back(f);
      } else {
        Face& f = m.faces_[it->second];
        if (f.elements[1] >= 0) {
          throw NonManifoldFaceError("face (" + std::to_string(key.first) + ", " +
                                     std::to_string(key.second) +
                                     ") is shared by more than two elements");
        }
        f.elements[1] = static_cast<int>(e);
        f.local_index[1] = i;
        m.element_faces_[e][i] = it->second;
      }
    }
  }
  return m;
}

std::size_t Mesh::num_boundary_faces() const {
  return static_cast<std::size_t>(
      std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return f.is_boundary(); }));
}

Point Mesh::outward_normal(std::size_t e, int local_face) const {
  const Face& f = faces_[element_faces_[e][local_face]];
  return f.elements[0] == static_cast<int>(e) ? f.normal : Point(-f.normal);
}

std::array<Point, 3> Mesh::element_vertices(std::size_t e) const {
  const auto& tri = elements_[e];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

Mesh generate_structured_square(int n) {
  if (n < 1) {
    throw std::invalid_argument("generate_structured_square: n must be >= 1, got " + std::to_string(n));
  }
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> elements;
  elements.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      elements.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      elements.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh::from_connectivity(std::move(vertices), std::move(elements));
}

Mesh load_mesh(std::string_view text) {
  // Strip comments, then tokenize the remainder.
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_comment = false;
  for (char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    cleaned.push_back(in_comment ? ' ' : c);
  }
  std::istringstream in(cleaned);

  long long nv = -1;
  long long ne = -1;
  if (!(in >> nv >> ne) || nv < 0 || ne < 0) {
    throw MeshParseError("mesh header must be two non-negative counts 'V E'");
  }
  std::vector<Point> vertices(static_cast<std::size_t>(nv));
  for (long long v = 0; v < nv; ++v) {
    double x = 0.0;
    double y = 0.0;
    if (!(in >> x >> y) || !std::isfinite(x) || !std::isfinite(y)) {
      throw MeshParseError("could not read coordinates of vertex " + std::to_string(v));
    }
    vertices[static_cast<std::size_t>(v)] = Point(x, y);
  }
  std::vector<std::array<int, 3>> elements(static_cast<std::size_t>(ne));
  for (long long e = 0; e < ne; ++e) {
    long long idx[3];
    if (!(in >> idx[0] >> idx[1] >> idx[2])) {
      throw MeshParseError("could not read vertex indices of element " + std::to_string(e));
    }
    for (int i = 0; i < 3; ++i) {
      if (idx[i] < 0 || idx[i] >= nv) {
        throw MeshParseError("element " + std::to_string(e) + " references vertex " +
                             std::to_string(idx[i]) + " out of range");
      }
      elements[static_cast<std::size_t>(e)][i] = static_cast<int>(idx[i]);
    }
  }
  std::string extra;
  if (in >> extra) {
    throw MeshParseError("unexpected trailing token '" + extra + "'");
  }
  return Mesh::from_connectivity(std::move(vertices), std::move(elements));
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open mesh file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_mesh(buffer.str());
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_elements() << '\n';
  out.precision(17);
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << '\n';
  for (const auto& t : mesh.elements()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

MeshMetrics mesh_metrics(const Mesh& mesh) {
  MeshMetrics out;
  if (mesh.num_elements() == 0) return out;
  out.h_min = mesh.diameter(0);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto [a, b, c] = mesh.element_vertices(e);
    const double perimeter = (b - a).norm() + (c - b).norm() + (a - c).norm();
    const double inradius = 2.0 * mesh.area(e) / perimeter;
    out.h_max = std::max(out.h_max, mesh.diameter(e));
    out.h_min = std::min(out.h_min, mesh.diameter(e));
    out.shape_regularity = std::max(out.shape_regularity, mesh.diameter(e) / inradius);
  }
  return out;
}

}  // namespace ihdg
