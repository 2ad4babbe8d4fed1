#pragma once

#include <string>

#include "isc/obstruction.hpp"
#include "isc/poset.hpp"
#include "isc/sheaf.hpp"

namespace isc {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// {"cells":[{"id","dim","stratum"}], "incidence":[[coface,face,sign]],
//  "strata":[{"name","codim"}]}; loading re-validates everything
std::string space_to_json(const StratifiedPoset& p);
StratifiedPoset space_from_json(const std::string& text);
StratifiedPoset load_space(const std::string& path);
void save_space(const StratifiedPoset& p, const std::string& path);

// {"base": ref, "terms":[{"deg","stalks":{id:dim},"restrictions":[[face,coface,M]]}],
//  "differentials":[{"deg","maps":{id:M}}]}. Rationals are "p/q" strings,
// matrices row-major. The base selection is the set of cells listed in the
// stalks of any term, so every base cell is written even with zero stalks.
std::string sheaf_to_json(const SheafComplex& k, const std::string& base_ref);
ComplexPtr sheaf_from_json(const std::string& text, const PosetPtr& space);
ComplexPtr load_sheaf(const std::string& path, const PosetPtr& space);
void save_sheaf(const SheafComplex& k, const std::string& base_ref, const std::string& path);

// page grid with rows q descending, columns p ascending
std::string ascii_page(const SpectralPage& page);

}  // namespace isc
