#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "gpt/io.hpp"
#include "support.hpp"

using namespace gpt;
using namespace gpt::test;

TEST_CASE("exact systems round-trip bit for bit")
{
    for (const char* name : {"classical:3", "boxworld", "noisy_boxworld:3/7", "spekkens_restricted",
                             "spekkens_unrestricted"}) {
        CAPTURE(name);
        const auto s = std::get<0>(build_model(ModelId::parse(name)));
        const auto text = write_system(s);
        const auto back = std::get<0>(read_system(text));
        CHECK(write_system(back) == text);
        CHECK(back.label() == s.label());
        CHECK(back.unit() == s.unit());
        CHECK(back.states().vertices() == s.states().vertices());
        CHECK(back.effects().vertices() == s.effects().vertices());
    }
    const auto doc = nlohmann::json::parse(write_system(noisy_boxworld(Q(1, 2))));
    CHECK(doc["mode"] == "exact");
    CHECK(doc["dim"] == 3);
    CHECK(doc["effects"][0][0] == "-1/4");
}

TEST_CASE("approximate systems round-trip exactly")
{
    for (const char* name : {"polygon:5", "selfdual_polygon:6"}) {
        CAPTURE(name);
        const auto s = std::get<1>(build_model(ModelId::parse(name)));
        const auto text = write_system(s);
        CHECK(nlohmann::json::parse(text)["mode"] == "approx");
        const auto back = std::get<1>(read_system(text));
        CHECK(back.states().vertices() == s.states().vertices());
        CHECK(back.effects().vertices() == s.effects().vertices());
        CHECK(write_system(back) == text);
    }
}

TEST_CASE("malformed and invalid documents are rejected")
{
    const auto good = nlohmann::json::parse(write_system(boxworld()));
    CHECK_THROWS_AS(read_system("not json"), InvalidInput);
    CHECK_THROWS_AS(read_system("[1, 2]"), InvalidInput);
    for (const char* field : {"label", "dim", "mode", "unit", "states", "effects"}) {
        auto doc = good;
        doc.erase(field);
        CAPTURE(field);
        CHECK_THROWS_AS(read_system(doc.dump()), InvalidInput);
    }
    auto bad_mode = good;
    bad_mode["mode"] = "float";
    CHECK_THROWS_AS(read_system(bad_mode.dump()), InvalidInput);
    auto short_vec = good;
    short_vec["unit"] = {"0", "1"};
    CHECK_THROWS_AS(read_system(short_vec.dump()), InvalidInput);
    auto bad_number = good;
    bad_number["states"][0][0] = "one";
    CHECK_THROWS_AS(read_system(bad_number.dump()), InvalidInput);
    // Effect giving 3/2 on a state.
    auto out_of_range = good;
    out_of_range["effects"][0] = {"-1/2", "0", "3/2"};
    CHECK_THROWS_AS(read_system(out_of_range.dump()), InvalidInput);
    // Integers are accepted as numbers.
    auto ints = good;
    ints["unit"] = {0, 0, 1};
    CHECK_NOTHROW(read_system(ints.dump()));
}

TEST_CASE("joint systems round-trip")
{
    const auto noisy = noisy_boxworld(Q(1, 2));
    for (TensorKind kind : {TensorKind::ProductStates, TensorKind::GeneralizedMaxTensor, TensorKind::MaxTensor}) {
        const auto j = make_tensor(kind, noisy, noisy);
        const auto text = write_joint(j);
        const auto back = std::get<0>(read_joint(text));
        CHECK(back.kind == kind);
        CHECK(back.vertices() == j.vertices());
        CHECK(write_joint(back) == text);
    }
    const auto lazy = generalized_max_tensor(noisy, noisy, {}, Enumeration::Skip);
    const auto text = write_joint(lazy);
    CHECK(nlohmann::json::parse(text)["vertices"].is_null());
    const auto back = std::get<0>(read_joint(text));
    CHECK_FALSE(back.enumerated());
    CHECK(back.constraints().inequalities.size() == lazy.constraints().inequalities.size());

    // A vertex outside the constraints is rejected.
    auto doc = nlohmann::json::parse(write_joint(generalized_max_tensor(noisy, noisy)));
    doc["vertices"][0][0] = "5";
    CHECK_THROWS_AS(read_joint(doc.dump()), InvalidInput);
    auto kindless = nlohmann::json::parse(text);
    kindless["kind"] = "min";
    CHECK_THROWS_AS(read_joint(kindless.dump()), InvalidInput);
}

TEST_CASE("chsh report")
{
    const auto bw = boxworld();
    const auto j = max_tensor(bw, bw);
    const auto r = chsh_max(j);
    const auto doc = nlohmann::json::parse(write_chsh_report(j, r));
    CHECK(doc["a"] == "boxworld");
    CHECK(doc["kind"] == "max");
    CHECK(doc["S"] == "4");
    CHECK(doc["method"] == "vertices");
    CHECK(doc["witness"]["state"].size() == 9);
    CHECK(doc["witness"]["a0"].size() == 3);
    CHECK(doc["witness"]["vertex_index"] == *r.vertex_index);
}

TEST_CASE("load_model reads files and names")
{
    const std::string path = "test_io_boxworld.json";
    {
        std::ofstream f(path);
        f << write_system(noisy_boxworld(Q(1, 3)));
    }
    const auto from_file = std::get<0>(load_model(path));
    CHECK(from_file.label() == "noisy_boxworld:1/3");
    CHECK(from_file.effects().vertices() == noisy_boxworld(Q(1, 3)).effects().vertices());
    std::remove(path.c_str());
    CHECK(std::get<0>(load_model("boxworld")).label() == "boxworld");
    CHECK_THROWS_AS(load_model("no_such_model"), InvalidInput);
}
