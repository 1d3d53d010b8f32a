#pragma once
#include <string>

#include "json.hpp"
#include "mackeylab/mackey.hpp"
#include "mackeylab/zhat.hpp"

namespace mackeylab {

using Json = nlohmann::json;

// Serialization used by the command line tool.  Every reader throws
// InputError on schema problems; values that parse but violate a domain
// precondition fail later in the owning operation.  Matrix entries are
// emitted as JSON numbers when they fit in 64 bits and as exact "a/b"
// strings otherwise; readers accept both.

/// "Z", "Q", "Z/7", "Z_(2)".
CoeffRing ring_from_string(const std::string& s);

Json mat_to_json(const Mat& m);
/// Expected shape given by the caller; an empty array stands for any shape
/// with zero rows.
Mat mat_from_json(const Json& j, int rows, int cols);
/// Free form: shape read off the array, [] meaning 0 x 0.
Mat mat_from_json(const Json& j);

/// {"ring":"Z","gens":2,"relations":[[2,0],[0,3]]}; each inner array is one
/// relation vector of length gens.
Json module_to_json(const FpModule& m);
FpModule module_from_json(const Json& j);

/// {"kind":"cyclic","n":4} | {"kind":"table","mul":[[...]]} |
/// {"kind":"perm","degree":3,"gens":[[1,0,2],[1,2,0]]}.
FiniteGroup group_from_json(const Json& j);
Json group_to_json(const FiniteGroup& g);  // always the table form
/// Shorthand names ("cyclic:4", "dihedral:3", "sym:4", "klein", "q8") or an
/// inline JSON object.
FiniteGroup group_from_spec(const std::string& s);

/// {"orbits":[{"stabilizer":classIndex,"count":k}]}.
GSet gset_from_json(const GroupContext& ctx, const Json& j);

/// {"ring":…, "group":…, "classes":[{"module":…, "weyl":[matrix…]}],
///  "res":[{"edge":[class,local],"matrix":…}], "tr":[…]}.
Json mackey_to_json(const MackeyFunctor& m);
MackeyFunctor mackey_from_json(const Json& j);

/// {"terms":[{"index":i,"coeff":"a/b"}]}.
Json witt_to_json(const WittElement& w);
WittElement witt_from_json(const Json& j);

/// Arithmetic over orbit classes: +, -, *, parentheses, exact rationals,
/// and the atoms eN.  Supersets the linear witt_parse syntax.
WittElement witt_eval(const std::string& expr);

/// {"ring":…, "bound":N, "levels":[…], "value":[module…],
///  "sigma":[matrix…], "push":[{"edge":[a,b],"matrix":…}], "pull":[…]}.
Json zmackey_to_json(const ZMackeyTrunc& m);
ZMackeyTrunc zmackey_from_json(const Json& j);

}  // namespace mackeylab
