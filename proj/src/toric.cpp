#include "spinlab/toric.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace spinlab {

namespace {

std::int64_t pmod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

// vertices shared by two faces (0, 1 or 2 on a torus)
std::vector<std::size_t> shared_corners(const ToricLattice& l, Face a, Face b) {
  const auto ca = l.face_corners(a);
  const auto cb = l.face_corners(b);
  std::vector<std::size_t> out;
  for (std::size_t va : ca)
    for (std::size_t vb : cb)
      if (va == vb && std::find(out.begin(), out.end(), va) == out.end()) out.push_back(va);
  return out;
}

std::string face_str(Face f) {
  return "(" + std::to_string(f.x) + "," + std::to_string(f.y) + ")";
}

}  // namespace

ToricLattice::ToricLattice(std::size_t lx, std::size_t ly) : lx_(lx), ly_(ly) {
  if (lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0)
    throw Error("invalid_lattice",
                "torus dimensions must be even and >= 2, got " + std::to_string(lx) + "x" +
                    std::to_string(ly));
  if (lx * ly > PauliString::kMaxSites)
    throw Error("invalid_lattice", "lattice exceeds " +
                                       std::to_string(PauliString::kMaxSites) + " vertices");
}

std::size_t ToricLattice::vertex_index(std::int64_t x, std::int64_t y) const {
  return static_cast<std::size_t>(pmod(x, static_cast<std::int64_t>(lx_))) +
         lx_ * static_cast<std::size_t>(pmod(y, static_cast<std::int64_t>(ly_)));
}

Face ToricLattice::wrap(Face f) const {
  return {pmod(f.x, static_cast<std::int64_t>(lx_)), pmod(f.y, static_cast<std::int64_t>(ly_))};
}

FaceColor ToricLattice::color(Face f) const {
  const Face w = wrap(f);
  return ((w.x + w.y) % 2 == 0) ? FaceColor::white : FaceColor::black;
}

std::array<std::size_t, 4> ToricLattice::face_corners(Face f) const {
  return {vertex_index(f.x, f.y), vertex_index(f.x + 1, f.y), vertex_index(f.x, f.y + 1),
          vertex_index(f.x + 1, f.y + 1)};
}

std::vector<Face> ToricLattice::all_faces(FaceColor c) const {
  std::vector<Face> out;
  for (std::int64_t y = 0; y < static_cast<std::int64_t>(ly_); ++y)
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(lx_); ++x)
      if (color({x, y}) == c) out.push_back({x, y});
  return out;
}

PauliString plaquette_operator(const ToricLattice& l, Face f) {
  const Face w = l.wrap(f);
  std::uint64_t mask = 0;
  for (std::size_t v : l.face_corners(w)) mask |= std::uint64_t{1} << v;
  if (std::popcount(mask) != 4)
    throw Error("invalid_lattice", "degenerate plaquette at " + face_str(w));
  const std::size_t n = l.n_vertices();
  return l.color(w) == FaceColor::white ? PauliString(n, mask, 0) : PauliString(n, 0, mask);
}

PauliSum build_toric_hamiltonian(const ToricLattice& l) {
  PauliSum h(l.n_vertices());
  for (FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face& f : l.all_faces(c)) h.add(plaquette_operator(l, f).with_coeff(-1.0));
  return h;
}

std::pair<PauliString, PauliString> constraint_products(const ToricLattice& l) {
  PauliString white = PauliString::identity(l.n_vertices());
  PauliString black = PauliString::identity(l.n_vertices());
  for (const Face& f : l.all_faces(FaceColor::white)) white = multiply(white, plaquette_operator(l, f));
  for (const Face& f : l.all_faces(FaceColor::black)) black = multiply(black, plaquette_operator(l, f));
  return {white, black};
}

std::vector<std::size_t> path_sites(const ToricLattice& l, const BishopPath& p) {
  if (p.faces.size() < 2)
    throw Error("malformed_path", "a bishop path needs at least two faces");
  for (const Face& f : p.faces)
    if (l.color(f) != p.color)
      throw Error("malformed_path", "face " + face_str(f) + " has the wrong color");
  std::vector<std::size_t> sites;
  const std::size_t pairs = p.closed ? p.faces.size() : p.faces.size() - 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Face a = p.faces[i];
    const Face b = p.faces[(i + 1) % p.faces.size()];
    const auto shared = shared_corners(l, a, b);
    if (shared.size() != 1)
      throw Error("malformed_path", "faces " + face_str(a) + " and " + face_str(b) +
                                        " share " + std::to_string(shared.size()) +
                                        " vertices, need exactly 1");
    sites.push_back(shared.front());
  }
  return sites;
}

PauliString line_operator(const ToricLattice& l, const BishopPath& p) {
  const std::size_t n = l.n_vertices();
  PauliString op = PauliString::identity(n);
  for (std::size_t v : path_sites(l, p)) {
    const PauliString factor = p.color == FaceColor::black
                                   ? PauliString(n, std::uint64_t{1} << v, 0)   // W: X factors
                                   : PauliString(n, 0, std::uint64_t{1} << v);  // B: Z factors
    op = multiply(op, factor);
  }
  return op;
}

int braiding_phase(const ToricLattice& l, const BishopPath& w_path, const BishopPath& b_path) {
  if (w_path.color != FaceColor::black || b_path.color != FaceColor::white)
    throw Error("malformed_path", "braiding needs a W (black) and a B (white) path");
  const auto ws = path_sites(l, w_path);
  const auto bs = path_sites(l, b_path);
  std::size_t crossings = 0;  // with multiplicity
  for (std::size_t a : ws)
    for (std::size_t b : bs)
      if (a == b) ++crossings;
  const int parity_sign = (crossings % 2 == 0) ? 1 : -1;
  const int symplectic_sign =
      commutes(line_operator(l, w_path), line_operator(l, b_path)) ? 1 : -1;
  if (parity_sign != symplectic_sign)
    throw Error("invalid_lattice", "intersection parity disagrees with symplectic form");
  return parity_sign;
}

double excitation_energy(const ToricLattice& l, std::span<const PauliString> ops) {
  PauliString product = PauliString::identity(l.n_vertices());
  for (const PauliString& op : ops) product = multiply(product, op);
  std::size_t flipped = 0;
  for (FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face& f : l.all_faces(c))
      if (!commutes(plaquette_operator(l, f), product)) ++flipped;
  return 2.0 * static_cast<double>(flipped);
}

namespace {

// Closed zigzag of the given color wrapping the torus once. x-winding
// paths alternate steps (+1,+1), (+1,-1); y-winding (+1,+1), (-1,+1).
// A bishop step preserves the face color automatically.
BishopPath zigzag_path(const ToricLattice& l, FaceColor color, bool x_winding) {
  const std::size_t len = x_winding ? l.lx() : l.ly();
  if (len < 4)
    throw Error("malformed_path",
                "zigzag wrapping path degenerate on width-2 torus; need extent >= 4");
  BishopPath p;
  p.color = color;
  p.closed = true;
  Face f{0, color == FaceColor::white ? 0 : 1};
  for (std::size_t i = 0; i < len; ++i) {
    p.faces.push_back(l.wrap(f));
    const bool even = i % 2 == 0;
    if (x_winding)
      f = {f.x + 1, f.y + (even ? 1 : -1)};
    else
      f = {f.x + (even ? 1 : -1), f.y + 1};
  }
  return p;
}

}  // namespace

bool LogicalAlgebraReport::all_verified() const {
  return std::all_of(relations.begin(), relations.end(), [](const auto& kv) { return kv.second; });
}

LogicalAlgebraReport logical_algebra(const ToricLattice& l) {
  const PauliString wx = line_operator(l, zigzag_path(l, FaceColor::black, true));
  const PauliString wy = line_operator(l, zigzag_path(l, FaceColor::black, false));
  const PauliString bx = line_operator(l, zigzag_path(l, FaceColor::white, true));
  const PauliString by = line_operator(l, zigzag_path(l, FaceColor::white, false));

  auto squares_to_identity = [](const PauliString& p) {
    const PauliString sq = multiply(p, p);
    return sq.is_identity_mask() && sq.phase_exp() == 0;
  };

  LogicalAlgebraReport rep{wx, wy, bx, by, {}, 0};
  rep.relations["W_X^2 = 1"] = squares_to_identity(wx);
  rep.relations["W_Y^2 = 1"] = squares_to_identity(wy);
  rep.relations["B_X^2 = 1"] = squares_to_identity(bx);
  rep.relations["B_Y^2 = 1"] = squares_to_identity(by);
  rep.relations["W_X B_Y = -B_Y W_X"] = !commutes(wx, by);
  rep.relations["W_Y B_X = -B_X W_Y"] = !commutes(wy, bx);
  rep.relations["[W_X, B_X] = 0"] = commutes(wx, bx);
  rep.relations["[W_Y, B_Y] = 0"] = commutes(wy, by);
  rep.relations["[W_X, W_Y] = 0"] = commutes(wx, wy);
  rep.relations["[B_X, B_Y] = 0"] = commutes(bx, by);
  bool with_plaquettes = true;
  for (FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face& f : l.all_faces(c)) {
      const PauliString h = plaquette_operator(l, f);
      with_plaquettes = with_plaquettes && commutes(wx, h) && commutes(wy, h) &&
                        commutes(bx, h) && commutes(by, h);
    }
  rep.relations["logicals commute with all plaquettes"] = with_plaquettes;
  // two independent anticommuting pairs force a 2*2-dimensional irrep
  rep.degeneracy = rep.all_verified() ? 4 : 0;
  return rep;
}

std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t words = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < 64 * words && rank < rows.size(); ++bit) {
    const std::size_t w = bit / 64;
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][w] & mask) {
        pivot = r;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !(rows[r][w] & mask)) continue;
      for (std::size_t j = 0; j < words; ++j) rows[r][j] ^= rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

DegeneracyCertificate stabilizer_degeneracy(const ToricLattice& l) {
  const std::size_t n = l.n_vertices();
  std::vector<std::vector<std::uint64_t>> rows;
  for (FaceColor c : {FaceColor::white, FaceColor::black})
    for (const Face& f : l.all_faces(c)) {
      const PauliString h = plaquette_operator(l, f);
      rows.push_back({h.x_mask(), h.z_mask()});  // [x | z] symplectic row
    }
  const std::size_t rank = gf2_rank(std::move(rows));
  return {"gf2_rank", n, rank, std::size_t{1} << (n - rank)};
}

BishopPath random_bishop_path(const ToricLattice& l, FaceColor color, std::size_t steps,
                              std::mt19937_64& rng) {
  if (steps == 0) throw Error("invalid_argument", "need at least one step");
  static constexpr std::array<std::pair<int, int>, 4> kSteps{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  BishopPath p;
  p.color = color;
  p.closed = false;
  std::uniform_int_distribution<std::int64_t> px(0, static_cast<std::int64_t>(l.lx()) - 1);
  std::uniform_int_distribution<std::int64_t> py(0, static_cast<std::int64_t>(l.ly()) - 1);
  Face f{px(rng), py(rng)};
  if (l.color(f) != color) f.x += 1;
  f = l.wrap(f);
  p.faces.push_back(f);
  int prev = -1;
  std::size_t attempts = 0;
  while (p.faces.size() < steps + 1) {
    if (++attempts > 1000 * (steps + 1))
      throw Error("malformed_path", "could not extend random bishop path on this torus");
    int dir = static_cast<int>(pick(rng));
    if (prev >= 0 && dir == (prev ^ 3)) continue;  // no immediate backtrack
    const Face next = l.wrap({f.x + kSteps[dir].first, f.y + kSteps[dir].second});
    if (shared_corners(l, f, next).size() != 1) continue;  // narrow-torus wrap artifact
    p.faces.push_back(next);
    f = next;
    prev = dir;
  }
  return p;
}

}  // namespace spinlab
