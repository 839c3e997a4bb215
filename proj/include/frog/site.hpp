#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace frog {

inline constexpr int kMaxDim = 3;
using Coord = std::int32_t;

/// A point of the state space. Lattice sites use `dim` coordinates of Z^d;
/// comb sites are (x, y) with y >= 0 and dim == 2. Unused coordinates are 0.
struct Site {
    std::uint8_t dim = 0;
    std::array<Coord, kMaxDim> c{};

    static Site of(std::initializer_list<Coord> coords);
    static Site origin(int d);
    /// sign * e_axis
    static Site unit(int d, int axis, int sign);

    Coord operator[](int k) const { return c[static_cast<std::size_t>(k)]; }
    Coord& operator[](int k) { return c[static_cast<std::size_t>(k)]; }

    friend bool operator==(const Site&, const Site&) = default;
    friend std::strong_ordering operator<=>(const Site&, const Site&) = default;
};

Site operator+(const Site& a, const Site& b);
Site operator-(const Site& a, const Site& b);
std::int64_t l1_norm(const Site& s);
std::string to_string(const Site& s);

struct SiteHash {
    std::size_t operator()(const Site& s) const noexcept;
};

enum class Geometry { lattice, comb };

/// Interpretation of sites: Z^d or the comb Z x N_0.
struct Space {
    Geometry geometry = Geometry::lattice;
    int dim = 1;

    static Space lattice(int d);
    static Space comb();
    bool contains(const Site& s) const;

    friend bool operator==(const Space&, const Space&) = default;
};

/// A finite set of sites: the support of the initial frog counts.
class Window {
public:
    Window() = default;

    /// { x in Z^d : |x|_1 <= radius }
    static Window l1_ball(int d, Coord radius);
    /// { x in Z^d : |x|_inf <= radius }
    static Window cube(int d, Coord radius);
    /// { (x, y) : |x| <= spine_radius, 0 <= y <= tooth_height }
    static Window comb(Coord spine_radius, Coord tooth_height);
    static Window from_sites(Space space, std::vector<Site> sites);

    const Space& space() const { return space_; }
    std::span<const Site> sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    bool contains(const Site& s) const { return index_.count(s) != 0; }
    std::optional<std::size_t> index_of(const Site& s) const;
    Window with_site(const Site& s) const;

    /// Coordinate-wise bounding box, inclusive. Empty windows report the origin.
    std::pair<Site, Site> bounding_box() const;

private:
    Space space_;
    std::vector<Site> sites_;
    std::unordered_map<Site, std::size_t, SiteHash> index_;
};

} // namespace frog
