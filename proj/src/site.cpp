#include "frog/site.hpp"

#include <algorithm>
#include <cstdlib>

#include "frog/errors.hpp"

namespace frog {

Site Site::of(std::initializer_list<Coord> coords) {
    if (coords.size() == 0 || coords.size() > static_cast<std::size_t>(kMaxDim))
        throw ParameterError("site dimension must be in [1, " + std::to_string(kMaxDim) + "]");
    Site s;
    s.dim = static_cast<std::uint8_t>(coords.size());
    std::copy(coords.begin(), coords.end(), s.c.begin());
    return s;
}

Site Site::origin(int d) {
    if (d < 1 || d > kMaxDim) throw ParameterError("dimension out of range: " + std::to_string(d));
    Site s;
    s.dim = static_cast<std::uint8_t>(d);
    return s;
}

Site Site::unit(int d, int axis, int sign) {
    Site s = origin(d);
    if (axis < 0 || axis >= d) throw ParameterError("axis out of range");
    s[axis] = sign >= 0 ? 1 : -1;
    return s;
}

Site operator+(const Site& a, const Site& b) {
    Site r = a;
    for (int k = 0; k < kMaxDim; ++k) r[k] += b[k];
    return r;
}

Site operator-(const Site& a, const Site& b) {
    Site r = a;
    for (int k = 0; k < kMaxDim; ++k) r[k] -= b[k];
    return r;
}

std::int64_t l1_norm(const Site& s) {
    std::int64_t n = 0;
    for (int k = 0; k < s.dim; ++k) n += std::llabs(static_cast<long long>(s[k]));
    return n;
}

std::string to_string(const Site& s) {
    std::string out = "(";
    for (int k = 0; k < s.dim; ++k) {
        if (k) out += ',';
        out += std::to_string(s[k]);
    }
    return out + ")";
}

std::size_t SiteHash::operator()(const Site& s) const noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ULL ^ s.dim;
    for (int k = 0; k < kMaxDim; ++k) {
        h ^= static_cast<std::uint32_t>(s[k]);
        h *= 0x9e3779b97f4a7c15ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

Space Space::lattice(int d) {
    if (d < 1 || d > kMaxDim) throw ParameterError("lattice dimension must be in [1, 3]");
    return Space{Geometry::lattice, d};
}

Space Space::comb() { return Space{Geometry::comb, 2}; }

bool Space::contains(const Site& s) const {
    if (s.dim != dim) return false;
    for (int k = dim; k < kMaxDim; ++k)
        if (s[k] != 0) return false;
    if (geometry == Geometry::comb && s[1] < 0) return false;
    return true;
}

Window Window::from_sites(Space space, std::vector<Site> sites) {
    for (const auto& s : sites)
        if (!space.contains(s)) throw ParameterError("site " + to_string(s) + " not in the state space");
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    Window w;
    w.space_ = space;
    w.sites_ = std::move(sites);
    w.index_.reserve(w.sites_.size());
    for (std::size_t i = 0; i < w.sites_.size(); ++i) w.index_.emplace(w.sites_[i], i);
    return w;
}

namespace {

template <class Keep>
std::vector<Site> enumerate_cube(int d, Coord radius, Keep keep) {
    std::vector<Site> out;
    Site s = Site::origin(d);
    for (int k = 0; k < d; ++k) s[k] = -radius;
    while (true) {
        if (keep(s)) out.push_back(s);
        int k = 0;
        while (k < d && s[k] == radius) {
            s[k] = -radius;
            ++k;
        }
        if (k == d) break;
        ++s[k];
    }
    return out;
}

} // namespace

Window Window::l1_ball(int d, Coord radius) {
    if (radius < 0) throw ParameterError("window radius must be nonnegative");
    auto sites = enumerate_cube(d, radius, [&](const Site& s) { return l1_norm(s) <= radius; });
    return from_sites(Space::lattice(d), std::move(sites));
}

Window Window::cube(int d, Coord radius) {
    if (radius < 0) throw ParameterError("window radius must be nonnegative");
    auto sites = enumerate_cube(d, radius, [](const Site&) { return true; });
    return from_sites(Space::lattice(d), std::move(sites));
}

Window Window::comb(Coord spine_radius, Coord tooth_height) {
    if (spine_radius < 0 || tooth_height < 0) throw ParameterError("comb window sizes must be nonnegative");
    std::vector<Site> sites;
    for (Coord x = -spine_radius; x <= spine_radius; ++x)
        for (Coord y = 0; y <= tooth_height; ++y) sites.push_back(Site::of({x, y}));
    return from_sites(Space::comb(), std::move(sites));
}

std::optional<std::size_t> Window::index_of(const Site& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Window Window::with_site(const Site& s) const {
    if (contains(s)) return *this;
    auto sites = sites_;
    sites.push_back(s);
    return from_sites(space_, std::move(sites));
}

std::pair<Site, Site> Window::bounding_box() const {
    Site lo = Site::origin(space_.dim);
    Site hi = lo;
    if (sites_.empty()) return {lo, hi};
    lo = hi = sites_.front();
    for (const auto& s : sites_)
        for (int k = 0; k < space_.dim; ++k) {
            lo[k] = std::min(lo[k], s[k]);
            hi[k] = std::max(hi[k], s[k]);
        }
    return {lo, hi};
}

} // namespace frog
