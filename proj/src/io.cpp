#include "gpt/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gpt {
namespace {

using json = nlohmann::ordered_json;

template <class T>
json vec_json(const Vector<T>& v)
{
    json out = json::array();
    for (const auto& x : v) {
        out.push_back(NumTraits<T>::format(x));
    }
    return out;
}

template <class T>
json list_json(const std::vector<Vector<T>>& vs)
{
    json out = json::array();
    for (const auto& v : vs) {
        out.push_back(vec_json(v));
    }
    return out;
}

template <class T>
Vector<T> vec_from(const json& j, std::size_t dim, const char* what)
{
    if (!j.is_array() || j.size() != dim) {
        throw InvalidInput(std::string(what) + ": expected an array of " + std::to_string(dim) + " numbers");
    }
    Vector<T> v;
    v.reserve(dim);
    for (const auto& x : j) {
        if (x.is_string()) {
            v.push_back(NumTraits<T>::parse(x.get<std::string>()));
        } else if (x.is_number_integer()) {
            v.push_back(T(x.get<long long>()));
        } else {
            throw InvalidInput(std::string(what) + ": numbers must be strings or integers");
        }
    }
    return v;
}

template <class T>
std::vector<Vector<T>> list_from(const json& j, std::size_t dim, const char* what)
{
    if (!j.is_array()) {
        throw InvalidInput(std::string(what) + ": expected an array");
    }
    std::vector<Vector<T>> out;
    for (const auto& v : j) {
        out.push_back(vec_from<T>(v, dim, what));
    }
    return out;
}

const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "approx"; }

Mode mode_from(const json& doc)
{
    const auto it = doc.find("mode");
    if (it == doc.end() || !it->is_string()) {
        throw InvalidInput("missing field: mode");
    }
    const auto s = it->get<std::string>();
    if (s == "exact") {
        return Mode::Exact;
    }
    if (s == "approx") {
        return Mode::Approx;
    }
    throw InvalidInput("unknown mode: " + s);
}

const json& field(const json& doc, const char* name)
{
    const auto it = doc.find(name);
    if (it == doc.end()) {
        throw InvalidInput(std::string("missing field: ") + name);
    }
    return *it;
}

std::size_t dim_from(const json& doc)
{
    const auto& d = field(doc, "dim");
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) {
        throw InvalidInput("dim must be a positive integer");
    }
    return d.get<std::size_t>();
}

json parse_doc(const std::string& text)
{
    try {
        auto doc = json::parse(text);
        if (!doc.is_object()) {
            throw InvalidInput("expected a JSON object");
        }
        return doc;
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed document: ") + e.what());
    }
}

template <class T>
json system_json(const GptSystem<T>& s)
{
    json doc;
    doc["label"] = s.label();
    doc["dim"] = s.dim();
    doc["mode"] = mode_name(NumTraits<T>::mode);
    doc["unit"] = vec_json(s.unit());
    doc["states"] = list_json(s.states().vertices());
    doc["effects"] = list_json(s.effects().vertices());
    return doc;
}

template <class T>
GptSystem<T> system_from(const json& doc, const Settings& cfg)
{
    const std::size_t dim = dim_from(doc);
    const auto& label = field(doc, "label");
    if (!label.is_string()) {
        throw InvalidInput("label must be a string");
    }
    auto unit = vec_from<T>(field(doc, "unit"), dim, "unit");
    auto states = list_from<T>(field(doc, "states"), dim, "states");
    auto effects = list_from<T>(field(doc, "effects"), dim, "effects");
    return GptSystem<T>::from_points(label.get<std::string>(), std::move(unit), std::move(states), std::move(effects),
                                     cfg);
}

template <class T>
JointSystem<T> joint_from(const json& doc, const Settings& cfg)
{
    const auto& kind_field = field(doc, "kind");
    if (!kind_field.is_string()) {
        throw InvalidInput("kind must be a string");
    }
    const TensorKind kind = parse_tensor_kind(kind_field.get<std::string>());
    const auto a = system_from<T>(field(doc, "a"), cfg);
    const auto b = system_from<T>(field(doc, "b"), cfg);
    if (mode_from(field(doc, "a")) != NumTraits<T>::mode || mode_from(field(doc, "b")) != NumTraits<T>::mode) {
        throw InvalidInput("joint and party documents disagree on mode");
    }
    if (dim_from(doc) != a.dim() * b.dim()) {
        throw InvalidInput("joint dim does not match the parties");
    }
    auto j = make_tensor(kind, a, b, cfg, Enumeration::Skip);
    const auto it = doc.find("vertices");
    if (it == doc.end() || it->is_null()) {
        if (kind == TensorKind::ProductStates) {
            throw InvalidInput("product joint requires a vertex list");
        }
        return j;
    }
    auto vertices = list_from<T>(*it, j.dim(), "vertices");
    if (kind == TensorKind::ProductStates) {
        const auto given = Polytope<T>::from_points(j.dim(), std::move(vertices), cfg);
        if (!given.same_vertices(*j.states, cfg)) {
            throw InvalidInput("vertex list is not the product of the party state spaces");
        }
        return j;
    }
    for (const auto& v : vertices) {
        if (!j.h->contains(v, cfg)) {
            throw InvalidInput("vertex violates the joint constraints");
        }
    }
    j.states = Polytope<T>::from_parts(std::move(vertices), *j.h, cfg);
    return j;
}

}  // namespace

template <class T>
std::string write_system(const GptSystem<T>& s)
{
    return system_json(s).dump(2) + "\n";
}

AnySystem read_system(const std::string& text, const Settings& cfg)
{
    const auto doc = parse_doc(text);
    if (mode_from(doc) == Mode::Exact) {
        return system_from<Rational>(doc, cfg);
    }
    return system_from<double>(doc, cfg);
}

template <class T>
std::string write_joint(const JointSystem<T>& j)
{
    json doc;
    doc["kind"] = std::string(to_string(j.kind));
    doc["dim"] = j.dim();
    doc["mode"] = mode_name(NumTraits<T>::mode);
    doc["unit"] = vec_json(j.unit());
    doc["a"] = system_json(j.a);
    doc["b"] = system_json(j.b);
    doc["vertices"] = j.enumerated() ? list_json(j.vertices()) : json(nullptr);
    return doc.dump(2) + "\n";
}

AnyJoint read_joint(const std::string& text, const Settings& cfg)
{
    const auto doc = parse_doc(text);
    if (mode_from(doc) == Mode::Exact) {
        return joint_from<Rational>(doc, cfg);
    }
    return joint_from<double>(doc, cfg);
}

template <class T>
std::string write_chsh_report(const JointSystem<T>& j, const ChshResult<T>& r)
{
    json doc;
    doc["a"] = j.a.label();
    doc["b"] = j.b.label();
    doc["kind"] = std::string(to_string(j.kind));
    doc["mode"] = mode_name(NumTraits<T>::mode);
    doc["S"] = NumTraits<T>::format(r.value);
    doc["method"] = r.method == ChshMethod::Vertices ? "vertices" : "lp";
    json w;
    w["a0"] = vec_json(r.scenario.a[0]);
    w["a1"] = vec_json(r.scenario.a[1]);
    w["b0"] = vec_json(r.scenario.b[0]);
    w["b1"] = vec_json(r.scenario.b[1]);
    w["state"] = vec_json(r.state);
    if (r.vertex_index) {
        w["vertex_index"] = *r.vertex_index;
    }
    doc["witness"] = std::move(w);
    return doc.dump(2) + "\n";
}

AnySystem load_model(const std::string& spec, const Settings& cfg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(spec, ec)) {
        std::ifstream in(spec);
        std::ostringstream ss;
        ss << in.rdbuf();
        if (!in && !in.eof()) {
            throw InvalidInput("cannot read " + spec);
        }
        return read_system(ss.str(), cfg);
    }
    return build_model(ModelId::parse(spec), cfg);
}

template std::string write_system(const GptSystem<Rational>&);
template std::string write_system(const GptSystem<double>&);
template std::string write_joint(const JointSystem<Rational>&);
template std::string write_joint(const JointSystem<double>&);
template std::string write_chsh_report(const JointSystem<Rational>&, const ChshResult<Rational>&);
template std::string write_chsh_report(const JointSystem<double>&, const ChshResult<double>&);

}  // namespace gpt
