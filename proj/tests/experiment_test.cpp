#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <fmt/format.h>
#include <json.hpp>

#include "gkdv/checkpoint.hpp"
#include "gkdv/commands.hpp"
#include "gkdv/config.hpp"
#include "gkdv/datum.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using namespace gkdv;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gkdv_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// ---- config ----

TEST(Config, DefaultsAreValid) {
  const ExperimentConfig c = parse("");
  EXPECT_EQ(c.modes, 1024u);
  EXPECT_EQ(c.datum.family, DatumFamily::sech);
  EXPECT_EQ(c.sweep_sigma_list().size(), 8u);
  EXPECT_DOUBLE_EQ(c.sweep_sigma_list().front(), 1.0 / 256.0);
}

TEST(Config, ReadsEverySection) {
  const ExperimentConfig c = parse(R"(
[grid]
modes = 256
length = 40
[datum]
family = gaussian
amplitude = 0.5
width = 2
[solver]
dt = 0.002
horizon = 0.5
stride = 5
dealias = true
[analytics]
sigmas = 0.1, 0.2
band_lo = 1
band_hi = 10
[scheduler]
c0 = 0.2
r = 3
C = 2
sigma0 = 0.5
horizon = 4
[sweep]
delta = 0.01
sigmas = 0.25, 0.5
[symbol]
samples = 1000
thetas = 0, 1
grid_range = 2
[output]
checkpoint_times = 0, 0.5
[run]
seed = 9
)");
  EXPECT_EQ(c.modes, 256u);
  EXPECT_EQ(c.datum.family, DatumFamily::gaussian);
  EXPECT_EQ(c.solver.sample_stride, 5u);
  EXPECT_EQ(c.analytics.sigmas, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(*c.analytics.fit.k_hi, 10.0);
  EXPECT_EQ(c.schedule.constants.r, 3.0);
  EXPECT_EQ(*c.sweep_delta, 0.01);
  EXPECT_EQ(c.sweep_sigma_list(), (std::vector<double>{0.25, 0.5}));
  EXPECT_EQ(c.symbol.seed, 9u);
  EXPECT_EQ(c.symbol_grid_range, 2);
  EXPECT_EQ(c.checkpoint_times.size(), 2u);
}

TEST(Config, UnknownKeysAndSectionsAreErrors) {
  EXPECT_THROW(parse("[grid]\nmodez = 64\n"), ConfigError);
  EXPECT_THROW(parse("[gird]\nmodes = 64\n"), ConfigError);
  EXPECT_THROW(parse("modes = 64\n"), ConfigError);
  EXPECT_THROW(parse("[grid\nmodes = 64\n"), ConfigError);
}

TEST(Config, BadValuesNameTheField) {
  auto message = [](const std::string& text) {
    try {
      (void)parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("[grid]\nmodes = 63\n").find("[grid]"), std::string::npos);
  EXPECT_NE(message("[solver]\ndt = fast\n").find("dt"), std::string::npos);
  EXPECT_NE(message("[solver]\ndealias = maybe\n").find("dealias"), std::string::npos);
  EXPECT_NE(message("[analytics]\nsigmas = 100\n").find("[analytics] sigmas"), std::string::npos);
  EXPECT_NE(message("[scheduler]\nr = 1\n").find("[scheduler]"), std::string::npos);
  EXPECT_NE(message("[sweep]\nsigmas = 0.1, 0.3\n").find("[sweep] sigmas"), std::string::npos);
  EXPECT_NE(message("[datum]\nfamily = square\n").find("family"), std::string::npos);
  EXPECT_NE(message("[datum]\nfamily = cosine\nwavenumber = 0.33\n").find("[datum]"), std::string::npos);
  EXPECT_NE(message("[output]\ncheckpoint_times = 5\n").find("checkpoint_times"), std::string::npos);
  EXPECT_NE(message("[symbol]\nthetas = 2\n").find("[symbol]"), std::string::npos);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/gkdv.ini"), ConfigError); }

// ---- datum ----

TEST(Datum, FamiliesParseAndRoundTrip) {
  for (auto f : {DatumFamily::sech, DatumFamily::sech_pair, DatumFamily::gaussian, DatumFamily::cosine,
                 DatumFamily::soliton, DatumFamily::file}) {
    EXPECT_EQ(parse_datum_family(to_string(f)), f);
  }
  EXPECT_THROW(parse_datum_family("tanh"), std::invalid_argument);
}

TEST(Datum, ProfilesAtTheirCentre) {
  const Grid g(256, 40.0);
  DatumSpec spec;
  spec.amplitude = 2.0;
  EXPECT_NEAR(inverse(make_datum(g, spec))[128], 2.0, 1e-14);
  spec.family = DatumFamily::gaussian;
  EXPECT_NEAR(inverse(make_datum(g, spec))[128], 2.0, 1e-14);
  spec.family = DatumFamily::soliton;
  spec.speed = 2.0;
  EXPECT_NEAR(inverse(make_datum(g, spec))[128], std::cbrt(5.0), 1e-14);
  spec.family = DatumFamily::cosine;
  spec.wavenumber = 2 * kPi / 40.0 * 3;
  EXPECT_NEAR(inverse(make_datum(g, spec))[0], 2.0, 1e-14);
}

TEST(Datum, SolitonAgreesWithQuadratureInversion) {
  for (double c : {0.5, 1.0, 2.0}) {
    for (double x : {0.0, 0.1, 0.7, 1.5, 3.0, 6.0}) {
      const double expected = oracle::soliton_by_quadrature(x, c);
      EXPECT_NEAR(soliton_profile(x, c), expected, 1e-11 * std::cbrt(2.5 * c)) << c << " " << x;
      EXPECT_NEAR(soliton_profile(-x, c), expected, 1e-11 * std::cbrt(2.5 * c));
    }
  }
}

TEST(Datum, SolitonSolvesTravellingWaveEquation) {
  for (double c : {0.5, 1.0, 2.0}) {
    const double residual =
        oracle::travelling_wave_residual([c](double x) { return soliton_profile(x, c); }, c, 8.0, 0.005);
    EXPECT_LT(residual, 1e-8) << c;
  }
}

TEST(Datum, FileFamilyLoadsCheckpoint) {
  const fs::path dir = scratch_dir("datum_file");
  const Grid g(64, 10.0);
  const RealField field = RealField::from_function(g, [](double x) { return std::sin(x); });
  write_checkpoint(dir / "u.gkdv", field, 1.5);
  DatumSpec spec;
  spec.family = DatumFamily::file;
  spec.path = (dir / "u.gkdv").string();
  const RealField back = inverse(make_datum(g, spec));
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(back[j], field[j], 1e-15);
  EXPECT_THROW(make_datum(Grid(32, 10.0), spec), std::invalid_argument);
}

// ---- checkpoint ----

TEST(Checkpoint, BitExactRoundTrip) {
  std::mt19937_64 rng(1);
  const Grid g(128, 40 * kPi);
  const RealField field = testing_util::random_field(g, rng);
  std::stringstream buffer;
  write_checkpoint(buffer, field, 0.125);
  const Checkpoint cp = read_checkpoint(buffer);
  EXPECT_EQ(cp.time, 0.125);
  EXPECT_EQ(cp.field.grid(), g);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(cp.field[j], field[j]);
}

TEST(Checkpoint, HeaderLayout) {
  const Grid g(8, 2.0);
  std::stringstream buffer;
  write_checkpoint(buffer, RealField(g, {1, 2, 3, 4, 5, 6, 7, 8}), 3.0);
  const std::string bytes = buffer.str();
  ASSERT_EQ(bytes.size(), kCheckpointHeaderSize + 8 * 8);
  EXPECT_EQ(bytes.substr(0, 5), "GKDV1");
  EXPECT_EQ(bytes[5], '\x01');
  EXPECT_EQ(bytes[6], '\x00');
  EXPECT_EQ(bytes[7], '\x08');
  for (int i = 8; i < 15; ++i) EXPECT_EQ(bytes[i], '\x00');
  // 2.0 = 0x4000000000000000 little-endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[22]), 0x40);
  // 3.0 = 0x4008000000000000
  EXPECT_EQ(static_cast<unsigned char>(bytes[29]), 0x08);
  EXPECT_EQ(static_cast<unsigned char>(bytes[30]), 0x40);
  // first sample 1.0 = 0x3FF0000000000000
  EXPECT_EQ(static_cast<unsigned char>(bytes[37]), 0xF0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[38]), 0x3F);
}

TEST(Checkpoint, RejectsCorruptInput) {
  std::stringstream good;
  write_checkpoint(good, RealField(Grid(8, 2.0)), 0.0);
  const std::string bytes = good.str();
  auto read = [](const std::string& data) {
    std::istringstream in(data);
    return read_checkpoint(in);
  };
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(read(bad_magic), CheckpointError);
  std::string bad_version = bytes;
  bad_version[5] = '\x02';
  EXPECT_THROW(read(bad_version), CheckpointError);
  EXPECT_THROW(read(bytes.substr(0, bytes.size() - 1)), CheckpointError);
  EXPECT_THROW(read(bytes.substr(0, 20)), CheckpointError);
  EXPECT_THROW(read(bytes + "x"), CheckpointError);
  EXPECT_THROW(read_checkpoint(fs::path("/nonexistent/u.gkdv")), CheckpointError);
}

// ---- commands ----

struct CommandResult {
  int code;
  std::string log;
  std::string err;
};

CommandResult run(const std::string& name, const ExperimentConfig& config, CommandOptions options) {
  std::ostringstream log;
  std::ostringstream err;
  const int code = run_command(name, config, options, log, err);
  return {code, log.str(), err.str()};
}

ExperimentConfig small_config() {
  return parse("[grid]\nmodes = 256\nlength = 40\n[solver]\nhorizon = 0.05\ndt = 0.002\n");
}

TEST(Commands, SimulateWritesCsvAndCheckpoints) {
  ExperimentConfig config = small_config();
  config.checkpoint_times = {0.0, 0.05};
  CommandOptions options;
  options.out = scratch_dir("simulate");
  const CommandResult r = run("simulate", config, options);
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream csv(options.out / "trajectory.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,l2,mass,hamiltonian,A_sigma=0,A_sigma=0.25,A_sigma=0.5,sigma_hat,decay_class");
  std::string first;
  std::getline(csv, first);
  EXPECT_EQ(first.substr(0, 2), "0,");
  const Checkpoint last = read_checkpoint(options.out / "checkpoint_001.gkdv");
  EXPECT_DOUBLE_EQ(last.time, 0.05);
}

TEST(Commands, SimulateZeroDatumGivesZeroColumns) {
  ExperimentConfig config = small_config();
  config.datum.amplitude = 0.0;
  CommandOptions options;
  options.out = scratch_dir("simulate_zero");
  ASSERT_EQ(run("simulate", config, options).code, 0);
  std::ifstream csv(options.out / "trajectory.csv");
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    for (int i = 0; i < 7; ++i) {
      std::getline(fields, cell, ',');
      EXPECT_EQ(std::stod(cell), 0.0);
    }
  }
}

TEST(Commands, SimulateFloatsRoundTrip) {
  CommandOptions options;
  options.out = scratch_dir("simulate_digits");
  ExperimentConfig config = small_config();
  ASSERT_EQ(run("simulate", config, options).code, 0);
  std::ifstream csv(options.out / "trajectory.csv");
  std::string line;
  std::getline(csv, line);
  std::getline(csv, line);
  const std::string l2 = line.substr(2, line.find(',', 2) - 2);
  const double value = std::stod(l2);
  EXPECT_EQ(fmt::format("{:.17g}", value), l2);
  EXPECT_EQ(value, l2_norm(make_datum(config.grid(), config.datum)));
}

TEST(Commands, RadiusOfSech) {
  ExperimentConfig config;
  config.modes = 4096;
  CommandOptions options;
  options.out = scratch_dir("radius");
  ASSERT_EQ(run("radius", config, options).code, 0);
  const auto doc = nlohmann::json::parse(read_file(options.out / "radius.json"));
  EXPECT_NEAR(doc["sigma_hat"].get<double>(), kPi / 2, 0.02 * kPi / 2);
  EXPECT_EQ(doc["classification"], "exponential");
}

TEST(Commands, SweepEmitsOneRowPerSigma) {
  ExperimentConfig config = parse("[grid]\nmodes = 512\n[datum]\nfamily = sech_pair\n");
  CommandOptions options;
  options.out = scratch_dir("sweep");
  const CommandResult r = run("sweep-sigma", config, options);
  ASSERT_EQ(r.code, 0) << r.err << r.log;
  std::ifstream csv(options.out / "sweep.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "sigma,delta_e,bound,ratio,flag");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 8);
  const auto doc = nlohmann::json::parse(read_file(options.out / "sweep.json"));
  EXPECT_GE(doc["exponent"].get<double>(), 0.45);
}

TEST(Commands, SweepFlagsBelowFloorRows) {
  ExperimentConfig config = parse("[grid]\nmodes = 512\n[solver]\nnonlinear = false\n");
  CommandOptions options;
  options.out = scratch_dir("sweep_floor");
  EXPECT_EQ(run("sweep-sigma", config, options).code, kExitCheckFailed);
  const std::string csv = read_file(options.out / "sweep.csv");
  EXPECT_NE(csv.find("below-floor"), std::string::npos);
  EXPECT_NE(read_file(options.out / "sweep.json").find("insufficient signal"), std::string::npos);
}

TEST(Commands, FuzzIsDeterministic) {
  ExperimentConfig config;
  CommandOptions options;
  options.samples = 20'000;
  options.seed = 3;
  options.verify = true;
  options.out = scratch_dir("fuzz_a");
  ASSERT_EQ(run("fuzz-symbol", config, options).code, 0);
  const std::string a = read_file(options.out / "fuzz.json");
  options.out = scratch_dir("fuzz_b");
  ASSERT_EQ(run("fuzz-symbol", config, options).code, 0);
  EXPECT_EQ(a, read_file(options.out / "fuzz.json"));
  const auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc["violations"], 0);
  EXPECT_EQ(doc["samples"], 20'000);
  EXPECT_TRUE(doc.contains("worst_case_quadruple"));
  EXPECT_EQ(doc["exhaustive"]["violations"], 0);
}

TEST(Commands, SchedulePlanAndShortHorizon) {
  ExperimentConfig config = small_config();
  config.schedule.horizon = 10.0;
  CommandOptions options;
  options.out = scratch_dir("schedule");
  ASSERT_EQ(run("schedule", config, options).code, 0);
  const auto plan = nlohmann::json::parse(read_file(options.out / "plan.json"));
  EXPECT_GT(plan["delta"].get<double>(), 0.0);
  EXPECT_EQ(plan["n"].get<std::size_t>(),
            static_cast<std::size_t>(std::floor(10.0 / plan["delta"].get<double>())));

  config.schedule.horizon = 1e-4;
  const CommandResult r = run("schedule", config, options);
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("short-time"), std::string::npos);
}

TEST(Commands, ScheduleVerifyWritesReports) {
  ExperimentConfig config = small_config();
  config.schedule.horizon = 0.5;
  config.schedule.constants = {1.0, 2.0, 1.0};
  CommandOptions options;
  options.verify = true;
  options.out = scratch_dir("schedule_verify");
  const CommandResult r = run("schedule", config, options);
  ASSERT_EQ(r.code, 0) << r.err << r.log;
  EXPECT_TRUE(fs::exists(options.out / "induction.csv"));
  EXPECT_TRUE(fs::exists(options.out / "radius_trace.csv"));
  const auto plan = nlohmann::json::parse(read_file(options.out / "plan.json"));
  const auto doc = nlohmann::json::parse(read_file(options.out / "verify.json"));
  EXPECT_EQ(doc["induction_failures"], 0);
  EXPECT_EQ(doc["induction_steps"], static_cast<int>(std::ceil(0.5 / plan["delta"].get<double>())));
}

TEST(Commands, ScheduleVerifyFailsWhenA0IsUnderstated) {
  // A0 = 1 is below the measured norm of the default datum, so the ceiling 2 A0^2 is breached at once.
  ExperimentConfig config = small_config();
  config.schedule.horizon = 0.5;
  config.schedule.a0 = 1.0;
  config.schedule.constants = {1.0, 2.0, 1.0};
  CommandOptions options;
  options.verify = true;
  options.out = scratch_dir("schedule_verify_low_a0");
  EXPECT_EQ(run("schedule", config, options).code, kExitCheckFailed);
}

TEST(Commands, ProbeWritesRatios) {
  ExperimentConfig config = small_config();
  CommandOptions options;
  options.out = scratch_dir("probe");
  ASSERT_EQ(run("probe-multilinear", config, options).code, 0);
  const auto doc = nlohmann::json::parse(read_file(options.out / "probe.json"));
  EXPECT_EQ(doc["ratios"].size(), 3u);
  config.analytics.b = 0.4;
  EXPECT_EQ(run("probe-multilinear", config, options).code, kExitConfigError);
}

TEST(Commands, UnknownCommand) { EXPECT_EQ(run("plot", small_config(), {}).code, kExitConfigError); }

#ifdef GKDV_LAB_BINARY
int run_binary(const std::string& args) {
  const int status = std::system((std::string(GKDV_LAB_BINARY) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

TEST(Binary, ExitCodes) {
  const fs::path dir = scratch_dir("binary");
  std::ofstream(dir / "bad.ini") << "[grid]\nmodes = 7\n";
  std::ofstream(dir / "ok.ini") << "[grid]\nmodes = 256\nlength = 40\n";
  EXPECT_EQ(run_binary("radius --config " + (dir / "ok.ini").string() + " --out " + dir.string()), 0);
  EXPECT_EQ(run_binary("radius --config " + (dir / "bad.ini").string()), kExitConfigError);
  EXPECT_EQ(run_binary("radius --config " + (dir / "missing.ini").string()), kExitConfigError);
  EXPECT_EQ(run_binary("fuzz-symbol --samples 100 --seed 5 --verify --out " + dir.string()), 0);
  EXPECT_EQ(run_binary("nonsense"), kExitConfigError);
}
#endif

}  // namespace
