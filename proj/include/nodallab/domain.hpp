#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nodallab {

enum class DomainKind { rectangle, box, flat_torus, disk, sphere, masked_grid };
enum class BoundaryCondition { dirichlet, neumann };

std::string to_string(DomainKind kind);
std::string to_string(BoundaryCondition bc);

/// Active cells of an nx-by-ny lattice of h-by-h cells, row-major (i + nx * j).
struct CellMask {
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> active;

    bool at(int i, int j) const {
        return i >= 0 && j >= 0 && i < nx && j < ny && active[static_cast<std::size_t>(i + nx * j)] != 0;
    }
    std::size_t count() const;
};

/// What a spectrum is computed on. Analytic kinds are sampled on a grid whose
/// density is `resolution` points per unit length unless `points_per_axis`
/// overrides it.
struct DomainSpec {
    DomainKind kind = DomainKind::rectangle;
    std::vector<double> sides;  ///< rectangle (a, b), box (a, b, c), torus periods
    double radius = 1.0;        ///< disk
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    double resolution = 0.0;    ///< 0 selects 256 (2-D) or 64 (3-D)
    std::vector<int> points_per_axis;

    // masked_grid only
    CellMask mask;
    double h = 0.0;
    std::array<double, 2> origin{0.0, 0.0};
    std::string shape_name;  ///< e.g. "square", "lshape", "disk"; echoed in reports

    int dimension() const;
    bool is_euclidean() const { return kind != DomainKind::flat_torus && kind != DomainKind::sphere; }
    bool is_closed() const { return kind == DomainKind::flat_torus || kind == DomainKind::sphere; }
    double effective_resolution() const;

    /// Deterministic serialization used for cache keys and report echoes.
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;

    static DomainSpec rectangle(double a, double b, BoundaryCondition bc = BoundaryCondition::dirichlet);
    static DomainSpec box(double a, double b, double c);
    static DomainSpec torus(std::vector<double> periods);
    static DomainSpec disk(double radius);
    static DomainSpec sphere();
    static DomainSpec masked(CellMask mask, double h, BoundaryCondition bc, std::string shape_name,
                             std::array<double, 2> origin = {0.0, 0.0});
    /// (0,a) x (0,b) as a union of h-cells.
    static DomainSpec masked_rectangle(double a, double b, double h, BoundaryCondition bc);
    /// (0,2)^2 minus [1,2]^2.
    static DomainSpec masked_lshape(double h, BoundaryCondition bc);
    /// Cells whose center lies in the disk of the given radius centered at 0.
    static DomainSpec masked_disk(double radius, double h, BoundaryCondition bc);
};

/// Sample layout and topology of a domain. Points are sample locations, each
/// with a measure weight and neighbors in compressed row form.
struct Grid {
    int dimension = 2;
    bool euclidean = true;
    std::vector<double> weights;
    std::vector<std::array<double, 3>> coords;  ///< cartesian x,y,z; sphere (theta, phi); disk (r, theta)
    std::vector<int> neighbor_offsets;          ///< size() + 1 entries
    std::vector<int> neighbors;
    std::vector<std::uint8_t> on_boundary;      ///< sample adjacent to the domain boundary
    double total_measure = 0.0;
    double spacing = 0.0;                       ///< h for lattice grids, 0 otherwise
    std::array<double, 3> steps{0.0, 0.0, 0.0}; ///< per-axis lattice spacing

    // lattice grids (rectangle, box, torus, masked): point -> flat lattice index
    std::array<int, 3> shape{1, 1, 1};
    std::vector<int> lattice_index;

    std::size_t size() const { return weights.size(); }
    std::span<const int> neighbors_of(std::size_t p) const {
        return {neighbors.data() + neighbor_offsets[p],
                static_cast<std::size_t>(neighbor_offsets[p + 1] - neighbor_offsets[p])};
    }
};

struct ScalarField {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

std::shared_ptr<const Grid> build_grid(const DomainSpec& spec);

}  // namespace nodallab
