// Conforming triangular meshes of 2D domains.
//
// A Mesh is built once from vertex coordinates and counterclockwise vertex
// triples; faces, adjacency, boundary flags, normals and element diameters
// are derived from the connectivity and never change afterwards.

#ifndef IHDG_MESH_HPP
#define IHDG_MESH_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace ihdg {

using Point = Eigen::Vector2d;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text could not be parsed (bad counts, tokens, or indices out of range).
class MeshParseError : public MeshError {
 public:
  using MeshError::MeshError;
};

class DuplicateElementError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// Element with non-positive signed area (clockwise or degenerate).
class InvertedElementError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// A face shared by more than two elements.
class NonManifoldFaceError : public MeshError {
 public:
  using MeshError::MeshError;
};

struct Face {
  std::array<int, 2> vertices{};
  /// elements[1] is -1 on the boundary.
  std::array<int, 2> elements{-1, -1};
  /// Local face index within each adjacent element (-1 if absent).
  std::array<int, 2> local_index{-1, -1};
  /// Unit normal, outward with respect to elements[0].
  Point normal = Point::Zero();
  double length = 0.0;

  [[nodiscard]] bool is_boundary() const { return elements[1] < 0; }
};

class Mesh {
 public:
  /// Builds adjacency from connectivity. Throws InvertedElementError,
  /// DuplicateElementError or NonManifoldFaceError.
  static Mesh from_connectivity(std::vector<Point> vertices,
                                std::vector<std::array<int, 3>> elements);

  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::array<int, 3>>& elements() const { return elements_; }
  [[nodiscard]] const std::vector<Face>& faces() const { return faces_; }

  [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
  [[nodiscard]] std::size_t num_elements() const { return elements_.size(); }
  [[nodiscard]] std::size_t num_faces() const { return faces_.size(); }
  [[nodiscard]] std::size_t num_boundary_faces() const;
  [[nodiscard]] std::size_t num_interior_faces() const { return num_faces() - num_boundary_faces(); }

  /// Local face i of an element is opposite its local vertex i.
  [[nodiscard]] const std::array<int, 3>& element_faces(std::size_t e) const { return element_faces_[e]; }

  /// Outward unit normal of element e on its local face i.
  [[nodiscard]] Point outward_normal(std::size_t e, int local_face) const;

  [[nodiscard]] std::array<Point, 3> element_vertices(std::size_t e) const;
  [[nodiscard]] double area(std::size_t e) const { return areas_[e]; }
  [[nodiscard]] double diameter(std::size_t e) const { return diameters_[e]; }
  /// Largest element diameter.
  [[nodiscard]] double h() const { return h_; }

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> elements_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 3>> element_faces_;
  std::vector<double> areas_;
  std::vector<double> diameters_;
  double h_ = 0.0;
};

/// Unit square split into n x n cells, each cut by its bottom-left to
/// top-right diagonal. All elements are congruent with diameter sqrt(2)/n.
Mesh generate_structured_square(int n);

/// Parses the plain-text mesh format:
///   V E
///   x y        (V lines)
///   i j k      (E lines, 0-based, counterclockwise)
/// '#' starts a comment that runs to end of line.
Mesh load_mesh(std::string_view text);
Mesh load_mesh_file(const std::string& path);

/// Writes a mesh in the format accepted by load_mesh.
void write_mesh(const Mesh& mesh, std::ostream& out);

struct MeshMetrics {
  double h_max = 0.0;
  double h_min = 0.0;
  /// Maximum over elements of diameter / inradius.
  double shape_regularity = 0.0;
};

MeshMetrics mesh_metrics(const Mesh& mesh);

}  // namespace ihdg

#endif  // IHDG_MESH_HPP
