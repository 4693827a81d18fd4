#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bibx::geo {

struct Country {
  std::string name;  // canonical, lowercase
  std::string iso2;
  double lat = 0.0;
  double lon = 0.0;
};

// Country name lookup with aliases ("usa", "p.r. china", ...) and centroids.
class CountryTable {
 public:
  // The embedded table.
  static const CountryTable& builtin();

  // CSV rows `name,iso2,lat,lon[,alias;alias...]`; '#' lines are comments.
  static CountryTable from_csv(std::string_view text);

  // Case-insensitive exact match on a name or alias.
  const Country* find(std::string_view name) const;

  // Country of an affiliation string: the last comma-separated token, or the
  // longest trailing word run of it that names a country.
  const Country* from_affiliation(std::string_view affiliation) const;

  const std::vector<Country>& all() const { return countries_; }

 private:
  void add(Country c, const std::vector<std::string>& aliases);

  std::vector<Country> countries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace bibx::geo
