#include "reflector_ot/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "reflector_ot/delaunay.hpp"

namespace reflector_ot {

namespace {

double remainder_2pi(double a) {
  return std::remainder(a, 2.0 * std::numbers::pi);
}

/// Shared edge-midpoint + rim-segment machinery. `metric(p)` is the density
/// relative to the planar measure (1 for disks, 1/|mz| for caps) and `g(p)`
/// the planar-coordinates integrand.
double integrate_planar(const TriMesh& mesh, const std::function<double(Vec2)>& g,
                        const std::function<double(Vec2)>& metric) {
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    const Vec2 a = mesh.samples[t[0]], b = mesh.samples[t[1]], c = mesh.samples[t[2]];
    const double area = 0.5 * std::abs(orient2d(a, b, c));
    const Vec2 mab = (a + b) * 0.5, mbc = (b + c) * 0.5, mca = (c + a) * 0.5;
    total += area / 3.0 *
             (g(mab) * metric(mab) + g(mbc) * metric(mbc) + g(mca) * metric(mca));
  }
  // rim segments: boundary edges (appearing in one triangle) whose endpoints
  // both lie on the rim circle
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e)
      edge_count[std::minmax(t[e], t[(e + 1) % 3])]++;
  const double R = mesh.radius;
  for (const auto& [edge, count] : edge_count) {
    if (count != 1) continue;
    const auto [ia, ib] = edge;
    if (!mesh.on_boundary(ia) || !mesh.on_boundary(ib)) continue;
    const Vec2 a = mesh.samples[ia], b = mesh.samples[ib];
    const double tha = std::atan2(a.y, a.x);
    const double dth = std::abs(remainder_2pi(std::atan2(b.y, b.x) - tha));
    const double seg = 0.5 * R * R * (dth - std::sin(dth));
    const double thm = tha + remainder_2pi(std::atan2(b.y, b.x) - tha) * 0.5;
    const Vec2 arc_mid{R * std::cos(thm), R * std::sin(thm)};
    total += seg * g(arc_mid) * metric(arc_mid);
  }
  return total;
}

}  // namespace

double integrate_on_mesh(const TriMesh& mesh, const std::function<double(Vec2)>& f_planar) {
  if (mesh.kind == MeshKind::Disk)
    return integrate_planar(mesh, f_planar, [](Vec2) { return 1.0; });
  return integrate_planar(mesh, f_planar, [](Vec2 p) {
    return 1.0 / std::sqrt(std::max(1e-300, 1.0 - p.norm2()));
  });
}

double integrate_on_cap(const TriMesh& mesh,
                        const std::function<double(const UnitDirection&)>& f) {
  return integrate_on_mesh(
      mesh, [&](Vec2 p) { return f(UnitDirection::from_planar(p)); });
}

double gauss_legendre(double a, double b, const std::function<double(double)>& f) {
  // 64-point nodes/weights on [-1, 1] (symmetric; positive half listed)
  static const double x[32] = {
      0.0243502926634244, 0.0729931217877990, 0.1214628192961206, 0.1696444204239928,
      0.2174236437400071, 0.2646871622087674, 0.3113228719902110, 0.3572201583376681,
      0.4022701579639916, 0.4463660172534641, 0.4894031457070530, 0.5312794640198946,
      0.5718956462026340, 0.6111553551723933, 0.6489654712546573, 0.6852363130542333,
      0.7198818501716109, 0.7528199072605319, 0.7839723589433414, 0.8132653151227975,
      0.8406292962525803, 0.8659993981540928, 0.8893154459951141, 0.9105221370785028,
      0.9295691721319396, 0.9464113748584028, 0.9610087996520538, 0.9733268277899110,
      0.9833362538846260, 0.9910133714767443, 0.9963401167719553, 0.9993050417357722};
  static const double w[32] = {
      0.0486909570091397, 0.0485754674415034, 0.0483447622348030, 0.0479993885964583,
      0.0475401657148303, 0.0469681828162100, 0.0462847965813144, 0.0454916279274181,
      0.0445905581637566, 0.0435837245293235, 0.0424735151236536, 0.0412625632426235,
      0.0399537411327203, 0.0385501531786156, 0.0370551285402400, 0.0354722132568824,
      0.0338051618371416, 0.0320579283548516, 0.0302346570724025, 0.0283396726142595,
      0.0263774697150547, 0.0243527025687109, 0.0222701738083833, 0.0201348231535302,
      0.0179517157756973, 0.0157260304760247, 0.0134630478967186, 0.0111681394601311,
      0.0088467598263639, 0.0065044579689784, 0.0041470332605625, 0.0017832807216964};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 32; ++i)
    sum += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
  return half * sum;
}

}  // namespace reflector_ot
