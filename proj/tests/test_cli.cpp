#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "orientext/image.hpp"
#include "orientext/maskgen.hpp"
#include "orientext/normal_field.hpp"

using namespace orientext;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("ORIENTEXT_CLI");
    REQUIRE_MESSAGE(p != nullptr, "ORIENTEXT_CLI must point at the CLI binary");
    return p;
}

CmdResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path temp_dir(const char* name) {
    const auto p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("synth writes a uniform frontal map and validates its input") {
    const auto dir = temp_dir("orientext_cli_synth");
    const auto out = (dir / "n.png").string();

    const CmdResult ok = run("synth --normal 0,0,1 --size 64x64 -o " + out);
    CHECK(ok.exit_code == 0);
    const json rep = json::parse(ok.out);
    CHECK(rep["normal"][2] == 1.0);

    const ImageRGB8 img = read_png_rgb(out);
    CHECK(img.width == 64);
    CHECK(img.height == 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            CHECK(img.pixel(x, y)[0] == 128);
            CHECK(img.pixel(x, y)[1] == 128);
            CHECK(img.pixel(x, y)[2] == 255);
        }

    CHECK(run("synth --normal 0,0,0 -o " + out).exit_code == 2);
    CHECK(run("synth --normal bogus -o " + out).exit_code == 2);

    const CmdResult dih = run("synth --dihedral 0,0,1:1,0,1 --split 32 --size 64x64 -o " + out);
    CHECK(dih.exit_code == 0);
    const ImageRGB8 two = read_png_rgb(out);
    for (int x = 0; x < 64; ++x)
        CHECK(two.pixel(x, 7)[0] == (x < 32 ? 128 : 218));  // (1+sqrt(.5))/2*255

    fs::remove_all(dir);
}

TEST_CASE("mae reports zero for identical maps and the analytic tilt otherwise") {
    const auto dir = temp_dir("orientext_cli_mae");
    const auto a = (dir / "a.png").string();
    const auto b = (dir / "b.png").string();
    const auto ar = (dir / "a.nrm").string();
    const auto br = (dir / "b.nrm").string();

    REQUIRE(run("synth --normal 0,0,1 --size 32x32 -o " + a + " --raw " + ar).exit_code == 0);
    // 25 degree tilt about y: sin(25) = 0.42262, cos(25) = 0.90631.
    REQUIRE(run("synth --normal 0.4226182617,0,0.9063077870 --size 32x32 -o " + b + " --raw " +
                br).exit_code == 0);

    const json same = json::parse(run("mae --before " + a + " --after " + a).out);
    CHECK(same["mae_deg"] == 0.0);
    CHECK(same["pixels"] == 1024);

    const json tilted = json::parse(run("mae --before " + a + " --after " + b).out);
    CHECK(std::abs(tilted["mae_deg"].get<double>() - 25.0) <= 1.0);

    const json raw = json::parse(
        run("mae --raw --before " + ar + " --after " + br).out);
    CHECK(std::abs(raw["mae_deg"].get<double>() - 25.0) <= 1e-6);

    const auto small = (dir / "small.png").string();
    REQUIRE(run("synth --normal 0,0,1 --size 16x16 -o " + small).exit_code == 0);
    CHECK(run("mae --before " + a + " --after " + small).exit_code == 2);

    fs::remove_all(dir);
}

TEST_CASE("align reproduces layout boxes on a frontal scene and refuses edge-on") {
    const auto dir = temp_dir("orientext_cli_align");
    // The lossless .nrm path keeps the frontal normal exact; 8-bit PNG
    // quantization cannot represent (0,0,1) precisely.
    const auto normals = (dir / "n.nrm").string();
    const auto source = (dir / "src.png").string();
    write_png(source, ImageRGB8(300, 200));
    REQUIRE(run("synth --normal 0,0,1 --size 300x200 -o " + (dir / "n.png").string() +
                " --raw " + normals).exit_code == 0);

    const auto out1 = (dir / "out1").string();
    const CmdResult res = run("align --image " + source + " --normals " + normals +
                              " --roi 20,20,260,120 --text BUY -o " + out1);
    REQUIRE(res.exit_code == 0);

    const auto boxes =
        layout_text("BUY", {20, 20, 260, 120}, LayoutConfig{}, GlyphSet::builtin());
    std::ifstream qf(fs::path(out1) / "quads.json");
    const json jq = json::parse(qf);
    REQUIRE(jq["chars"].size() == boxes.size());
    for (size_t i = 0; i < boxes.size(); ++i) {
        const auto expected = boxes[i].box.corners();
        for (int k = 0; k < 4; ++k) {
            // 3-decimal serialization dominates the 1e-6 geometry error.
            CHECK(std::abs(jq["chars"][i]["quad"][k][0].get<double>() - expected[k].x) <= 5e-4);
            CHECK(std::abs(jq["chars"][i]["quad"][k][1].get<double>() - expected[k].y) <= 5e-4);
        }
    }
    for (const char* name : {"source.png", "cmask_aligned.png", "normals.png", "roi.png",
                             "quads.json", "manifest.json", "preview.png"})
        CHECK(fs::exists(fs::path(out1) / name));

    // Edge-on scene: dominant normal has |n_z| below the facing threshold.
    const auto edge = (dir / "edge.png").string();
    REQUIRE(run("synth --normal 1,0,0.01 --size 300x200 -o " + edge).exit_code == 0);
    CHECK(run("align --image " + source + " --normals " + edge +
              " --roi 20,20,260,120 --text BUY -o " + (dir / "out2").string()).exit_code == 3);

    // Bad inputs exit 2.
    CHECK(run("align --image " + source + " --normals " + normals +
              " --roi 20,20,9999,120 --text BUY -o " + (dir / "out3").string()).exit_code == 2);
    CHECK(run("align --image " + source + " --normals " + normals +
              " --roi 20,20,260,120 --text lower -o " + (dir / "out4").string()).exit_code == 2);

    fs::remove_all(dir);
}

TEST_CASE("augment is deterministic and validates parameters") {
    const auto dir = temp_dir("orientext_cli_aug");
    const auto normals_png = (dir / "n.png").string();
    const auto normals_raw = (dir / "n.nrm").string();
    const auto source = (dir / "src.png").string();
    ImageRGB8 img(64, 64);
    for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = static_cast<uint8_t>(i % 253);
    write_png(source, img);
    REQUIRE(run("synth --normal 0.2,0.1,0.97 --size 64x64 -o " + normals_png + " --raw " +
                normals_raw).exit_code == 0);

    const auto out1 = (dir / "id").string();
    REQUIRE(run("augment --image " + source + " --normals " + normals_raw + " -o " + out1)
                .exit_code == 0);
    // Identity parameters reproduce the inputs byte for byte.
    std::ifstream in1(source, std::ios::binary), in2(fs::path(out1) / "image.png",
                                                     std::ios::binary);
    std::ostringstream b1, b2;
    b1 << in1.rdbuf();
    b2 << in2.rdbuf();
    CHECK(b1.str() == b2.str());
    std::ifstream n1(normals_raw, std::ios::binary), n2(fs::path(out1) / "normals.nrm",
                                                        std::ios::binary);
    std::ostringstream c1, c2;
    c1 << n1.rdbuf();
    c2 << n2.rdbuf();
    CHECK(c1.str() == c2.str());

    REQUIRE(run("augment --image " + source + " --normals " + normals_raw +
                " --rotate 30 -o " + (dir / "rot").string()).exit_code == 0);
    CHECK(run("augment --image " + source + " --normals " + normals_raw +
              " --scale 0 -o " + (dir / "bad").string()).exit_code == 2);

    fs::remove_all(dir);
}

TEST_CASE("rate-stats aggregates a CSV and flags malformed rows") {
    const auto dir = temp_dir("orientext_cli_rate");
    const auto csv = (dir / "ratings.csv").string();
    {
        std::ofstream os(csv);
        os << "method,image_id,participant,harmonization,text_rendering,perspective_blending\n"
           << "ours,img1,p1,4,5,5\n"
           << "ours,img1,p2,2,5,3\n"
           << "base,img1,p1,1,2,3\n";
    }
    const CmdResult res = run("rate-stats --csv " + csv);
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["ours"]["harmonization"]["mean"] == 3.0);
    CHECK(j["ours"]["harmonization"]["variance"] == 1.0);
    CHECK(j["ours"]["text_rendering"]["fives"] == 2);
    CHECK(j["base"]["perspective_blending"]["histogram"]["3"] == 1);

    {
        std::ofstream os(csv);
        os << "method,image_id,participant,harmonization,text_rendering,perspective_blending\n"
           << "ours,img1,p1,4,9,5\n";
    }
    CHECK(run("rate-stats --csv " + csv).exit_code == 2);

    fs::remove_all(dir);
}

TEST_CASE("--help exits zero for the app and every subcommand") {
    CHECK(run("--help").exit_code == 0);
    for (const char* sub : {"synth", "align", "mae", "augment", "rate-stats"})
        CHECK(run(std::string(sub) + " --help").exit_code == 0);
}
