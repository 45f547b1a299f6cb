#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "wigbound/regions.hpp"

namespace wigbound {

// {"type":"disk","center":[q,p],"radius":r}
// {"type":"ellipse","center":[q,p],"semi_major":a,"semi_minor":b,"angle":t}
// {"type":"annulus","center":[q,p],"r_inner":r1,"r_outer":r2}
// {"type":"graph","b":num|"-inf","c":num|"+inf","f1":[[q,v],...],"f2":[[q,v],...]}
// {"type":"union","parts":[...]}
Region region_from_json(const nlohmann::json& j);
nlohmann::json region_to_json(const Region& s);
Region read_region_file(const std::filesystem::path& path);

} // namespace wigbound
