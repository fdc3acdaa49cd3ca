#ifndef QTCHAR_JSONIO_HPP
#define QTCHAR_JSONIO_HPP

#include "qtchar/charalg.hpp"
#include "qtchar/kl.hpp"
#include "qtchar/screening.hpp"

#include "json.hpp"

#include <string>

namespace qtchar {

// deterministic field ordering everywhere: the CLI promises byte-identical
// output for identical jobs
using Json = nlohmann::ordered_json;

Json laurent_to_json(const IntLaurent& p);        // {"exponent": coefficient}
IntLaurent laurent_from_json(const Json& j);

Json exponent_to_json(const ExponentVector& e);   // {"y": {"i,l": k}, "v": ...}
ExponentVector exponent_from_json(const Json& j);

Json element_to_json(const AlgebraElement& a);    // [{"y","v","coeff"}...]
AlgebraElement element_from_json(const Json& j);

Json series_to_json(const CharacterSeries& s);
Json ylaurent_to_json(const YLaurent& p);
Json rep_to_json(const RepElement& r);
Json screening_to_json(const ScreeningElement& s);
Json kl_to_json(const KLResult& kl);
Json probe_to_json(const ProbeReport& rep);
Json classify_to_json(const CartanData& cd);

/// Cartan input file: {"matrix": [[...]], "symmetrizer": [..]?, "name": ..?}
CartanData cartan_from_json(const Json& j, bool allow_decomposable = false);
CartanData load_cartan_file(const std::string& path, bool allow_decomposable = false);

} // namespace qtchar

#endif
