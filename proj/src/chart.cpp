#include "corner/chart.hpp"

#include "corner/errors.hpp"

namespace corner {

OrthantChart make_chart(int b, int m, std::vector<HypLabel> labels,
                        std::string name) {
  if (static_cast<int>(labels.size()) != b)
    throw DomainError("one label per boundary coordinate");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw DomainError("hypersurface labels must be distinct in a chart");
  OrthantChart c;
  c.b = b;
  c.m = m;
  c.labels = std::move(labels);
  c.name = std::move(name);
  return c;
}

LinSystem chart_system(const OrthantChart& c) {
  LinSystem sys;
  sys.n = c.dim();
  for (int i = 0; i < c.b; ++i) sys.ge(aff_coord(sys.n, i));
  for (const auto& cond : c.region.conds) sys.ineqs.push_back(cond);
  return sys;
}

std::vector<std::string> coord_names(const OrthantChart& c) {
  std::vector<std::string> names;
  for (int i = 0; i < c.b; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 0; i < c.m; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

}  // namespace corner
