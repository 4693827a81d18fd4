#include <array>
#include <cstdio>
#include <utility>

#include "bibx/render.hpp"

namespace bibx::render {

namespace {

using LonLat = std::pair<double, double>;

// Coarse outlines of the land masses, longitude/latitude in degrees.
const std::vector<std::vector<LonLat>>& outlines() {
  static const std::vector<std::vector<LonLat>> shapes = {
      // North America
      {{-168, 66}, {-162, 70}, {-140, 70}, {-125, 70}, {-95, 72}, {-80, 73}, {-65, 62}, {-60, 55}, {-53, 47},
       {-66, 44},  {-70, 42},  {-75, 38},  {-76, 35},  {-81, 31}, {-80, 25}, {-82, 28}, {-84, 30}, {-90, 29},
       {-97, 27},  {-97, 22},  {-95, 18},  {-90, 21},  {-87, 21}, {-88, 16}, {-83, 15}, {-83, 9},  {-78, 8},
       {-80, 7},   {-85, 10},  {-88, 13},  {-92, 14},  {-96, 16}, {-105, 20}, {-106, 23}, {-112, 29},
       {-114, 31}, {-110, 23}, {-115, 28}, {-118, 34}, {-121, 35}, {-124, 40}, {-124, 47}, {-123, 49},
       {-130, 54}, {-135, 58}, {-140, 60}, {-150, 60}, {-155, 58}, {-165, 54}, {-160, 58}, {-165, 62}},
      // Greenland
      {{-73, 78}, {-60, 82}, {-30, 83}, {-20, 80}, {-20, 70}, {-40, 65}, {-45, 60}, {-50, 64}, {-55, 70}},
      // South America
      {{-78, 8},   {-72, 12},  {-62, 11},  {-52, 5},   {-50, 0},   {-44, -2},  {-35, -5},  {-35, -9},
       {-39, -15}, {-41, -22}, {-48, -26}, {-53, -34}, {-58, -38}, {-62, -40}, {-65, -45}, {-68, -50},
       {-69, -55}, {-74, -52}, {-73, -45}, {-73, -37}, {-71, -30}, {-70, -18}, {-76, -14}, {-80, -6},
       {-81, -3},  {-80, 1}},
      // Eurasia
      {{-10, 36}, {-9, 43},   {-2, 44},   {-5, 48},   {2, 51},    {5, 53},   {8, 57},   {10, 54},  {12, 56},
       {5, 59},   {5, 62},    {14, 67},   {20, 70},   {30, 71},   {40, 67},  {45, 68},  {60, 70},  {70, 73},
       {80, 73},  {100, 77},  {110, 76},  {130, 72},  {140, 72},  {160, 70}, {180, 69}, {180, 65}, {170, 60},
       {163, 60}, {156, 51},  {157, 58},  {150, 59},  {141, 53},  {135, 44}, {129, 41}, {129, 35}, {126, 35},
       {126, 38}, {122, 40},  {121, 37},  {119, 35},  {122, 31},  {121, 28}, {117, 23}, {110, 21}, {108, 17},
       {109, 12}, {105, 9},   {103, 11},  {100, 13},  {100, 6},   {103, 2},  {100, 3},  {98, 8},   {98, 16},
       {94, 16},  {92, 21},   {89, 22},   {86, 20},   {80, 15},   {80, 10},  {77, 8},   {73, 17},  {72, 21},
       {67, 24},  {62, 25},   {57, 26},   {56, 24},   {59, 22},   {52, 17},  {45, 13},  {43, 13},  {39, 21},
       {35, 28},  {33, 30},   {35, 32},   {36, 36},   {30, 36},   {27, 37},  {26, 40},  {23, 40},  {22, 37},
       {19, 40},  {17, 41},   {12, 45},   {14, 41},   {16, 38},   {10, 44},  {3, 43},   {0, 39},   {-2, 37},
       {-6, 36}},
      // Africa
      {{-17, 21}, {-17, 15}, {-15, 11}, {-11, 7},  {-7, 4},   {0, 5},    {5, 4},    {9, 4},    {10, 1},
       {12, -5},  {13, -12}, {12, -18}, {15, -27}, {18, -33}, {20, -35}, {26, -34}, {32, -28}, {35, -24},
       {36, -19}, {40, -15}, {40, -10}, {39, -5},  {42, -1},  {48, 5},   {51, 12},  {44, 12},  {39, 18},
       {35, 26},  {32, 31},  {25, 32},  {20, 31},  {15, 32},  {10, 34},  {10, 37},  {3, 37},   {-2, 35},
       {-6, 36},  {-10, 30}, {-13, 27}},
      // Australia
      {{114, -22}, {114, -34}, {118, -35}, {124, -33}, {132, -32}, {138, -35}, {141, -38}, {147, -39},
       {150, -37}, {153, -32}, {153, -25}, {146, -19}, {142, -11}, {141, -17}, {136, -12}, {131, -11},
       {126, -14}, {122, -18}},
      // Great Britain
      {{-5, 50}, {1, 51}, {2, 53}, {-1, 55}, {-2, 58}, {-5, 59}, {-6, 56}, {-3, 54}, {-5, 52}},
      // Japan
      {{130, 31}, {132, 34}, {136, 35}, {140, 36}, {142, 40}, {141, 45}, {144, 43}, {140, 41}, {139, 38},
       {135, 33}},
      // Sumatra
      {{95, 5}, {98, 4}, {104, -2}, {106, -6}, {102, -4}},
      // Borneo
      {{109, 2}, {114, 5}, {119, 6}, {118, 1}, {116, -4}, {110, -3}},
      // New Zealand
      {{172, -34}, {175, -37}, {178, -38}, {175, -41}, {172, -44}, {167, -46}, {170, -43}, {172, -40}},
      // Madagascar
      {{44, -25}, {47, -25}, {50, -15}, {49, -12}, {44, -16}},
  };
  return shapes;
}

}  // namespace

Point project_lonlat(double lon, double lat, const Rect& rect) {
  return {rect.x + (lon + 180.0) / 360.0 * rect.w, rect.y + (90.0 - lat) / 180.0 * rect.h};
}

std::string coastline_path(const Rect& rect) {
  std::string d;
  char buf[48];
  for (const auto& shape : outlines()) {
    for (std::size_t i = 0; i < shape.size(); ++i) {
      const Point p = project_lonlat(shape[i].first, shape[i].second, rect);
      std::snprintf(buf, sizeof buf, "%c%.1f %.1f", i == 0 ? 'M' : 'L', p.x, p.y);
      d += buf;
    }
    d += 'Z';
  }
  return d;
}

}  // namespace bibx::render
