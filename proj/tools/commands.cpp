#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dhg/circuit.hpp"
#include "dhg/delay.hpp"
#include "dhg/errors.hpp"
#include "dhg/io.hpp"
#include "dhg/numerics.hpp"

namespace dhg::cli {
namespace {

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidationError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

// Stimuli with every signal cut at `horizon`.
Stimuli with_horizon(const Stimuli& in, double horizon) {
  Stimuli out;
  for (const auto& [name, s] : in) {
    std::vector<Transition> tr;
    for (const auto& t : s.transitions()) {
      if (t.time <= horizon) tr.push_back(t);
    }
    out.emplace(name, BinarySignal(s.initial(), std::move(tr), horizon));
  }
  return out;
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& err) {
  return guarded(err, [&] {
    const Netlist net = parse_netlist(read_text_file(args.netlist));
    const StimulusFile stim = parse_stimuli(read_text_file(args.stimuli));
    const double horizon = args.horizon.value_or(stim.horizon);
    const Stimuli signals = with_horizon(stim.signals, horizon);
    SimulationOptions opt;
    opt.max_events = args.max_events;
    const Execution exec = build_execution(net, signals, horizon, opt);
    std::ostringstream csv;
    write_trace_csv(csv, exec);
    if (args.vcd) {
      std::ostringstream vcd;
      write_vcd(vcd, exec);
      emit(*args.vcd, vcd.str());
    }
    emit(args.out, csv.str());
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& err) {
  if (args.steps < 2) {
    err << "usage error: --steps must be at least 2\n";
    return kParseError;
  }
  return guarded(err, [&] {
    const NorAdvancedParams p = parse_nor_advanced_params(read_text_file(args.params));
    p.validate();
    OutputEdge edge;
    if (args.edge == "rising") {
      edge = OutputEdge::rising;
    } else if (args.edge == "falling") {
      edge = OutputEdge::falling;
    } else {
      throw ValidationError("edge must be 'rising' or 'falling'");
    }
    std::ostringstream csv;
    write_sweep_csv(csv, sweep_curve(edge, args.from, args.to, args.steps, p));
    emit(args.out, csv.str());
  });
}

int cmd_characterize(const CharacterizeArgs& args, std::ostream& err) {
  return guarded(err, [&] {
    const CharacteristicDelays d = parse_delays(read_text_file(args.delays));
    const CharacterizationResult r = characterize(d, args.capacitance);
    for (const auto& msg : r.diagnostics) err << "note: " << msg << '\n';
    emit(args.out, nor_advanced_params_json(r.params));
  });
}

int cmd_continuity(const ContinuityArgs& args, std::ostream& err) {
  return guarded(err, [&] {
    const Netlist net = parse_netlist(read_text_file(args.netlist));
    const StimulusFile stim = parse_stimuli(read_text_file(args.stimuli));
    const double horizon = args.horizon.value_or(stim.horizon);
    const Stimuli base = with_horizon(stim.signals, horizon);
    auto it = base.find(args.signal);
    if (it == base.end()) throw ValidationError("no stimulus named '" + args.signal + "'");
    if (args.kind != "shift" && args.kind != "pulse") {
      throw ValidationError("perturbation kind must be 'shift' or 'pulse'");
    }

    Stimuli reference = base;
    if (args.kind == "pulse") {
      reference.insert_or_assign(args.signal, BinarySignal::constant(false, horizon));
    }
    const Execution ref = build_execution(net, reference, horizon);
    const auto& vs = net.vertices();

    std::ostringstream csv;
    csv << "eps_s,d_in_s,d_out_s,sup_analog_v,bound_v,bound_ok\n";
    for (double eps : args.eps) {
      Stimuli perturbed = reference;
      if (args.kind == "shift") {
        auto tr = it->second.transitions();
        if (args.transition >= tr.size()) throw ValidationError("transition index out of range");
        tr[args.transition].time += eps;
        perturbed.insert_or_assign(args.signal,
                                   BinarySignal(it->second.initial(), std::move(tr), horizon));
      } else {
        perturbed.insert_or_assign(
            args.signal,
            BinarySignal(false, {{args.pulse_start, true}, {args.pulse_start + eps, false}},
                         horizon));
      }
      const Execution run = build_execution(net, perturbed, horizon);
      double d_in = 0.0;
      double d_out = 0.0;
      double sup = 0.0;
      double bound = 0.0;
      bool ok = true;
      for (std::size_t v = 0; v < vs.size(); ++v) {
        if (vs[v].kind == VertexKind::input) d_in += l1_distance(ref.signal(v), run.signal(v));
        if (vs[v].kind == VertexKind::output) d_out += l1_distance(ref.signal(v), run.signal(v));
        if (vs[v].kind != VertexKind::gate) continue;
        std::vector<BinarySignal> a;
        std::vector<BinarySignal> b;
        for (const auto& d : net.drivers(v)) {
          a.push_back(ref.signal(*d));
          b.push_back(run.signal(*d));
        }
        if (a.empty()) continue;
        ProbeOptions opt;
        opt.grid_points = args.grid_points;
        opt.initial_output = ref.initial[v];
        const ContinuityReport r = continuity_probe(*vs[v].model, a, b, opt);
        sup = std::max(sup, r.sup_analog);
        bound = std::max(bound, r.bound);
        ok = ok && r.sup_analog <= r.bound;
      }
      csv << format_double(eps) << ',' << format_double(d_in) << ',' << format_double(d_out)
          << ',' << format_double(sup) << ',' << format_double(bound) << ',' << (ok ? 1 : 0)
          << '\n';
    }
    emit(args.out, csv.str());
  });
}

int run(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Timing analysis for digitized hybrid gate circuits"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a netlist and write a transition trace");
  simulate->add_option("netlist", sim.netlist, "Netlist JSON")->required();
  simulate->add_option("stimuli", sim.stimuli, "Stimuli JSON")->required();
  simulate->add_option("--horizon", sim.horizon, "Simulation horizon in seconds");
  simulate->add_option("--out", sim.out, "Trace CSV path ('-' for stdout)");
  simulate->add_option("--vcd", sim.vcd, "Also write a VCD file");
  simulate->add_option("--max-events", sim.max_events, "Event budget");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Tabulate MIS delay against input separation");
  sweep->add_option("params", sw.params, "NOR parameter JSON")->required();
  sweep->add_option("--edge", sw.edge, "rising or falling output")
      ->check(CLI::IsMember({"rising", "falling"}));
  sweep->add_option("--from", sw.from, "First separation (s)");
  sweep->add_option("--to", sw.to, "Last separation (s)");
  sweep->add_option("--steps", sw.steps, "Number of samples (at least 2)");
  sweep->add_option("--out", sw.out, "CSV path ('-' for stdout)");

  CharacterizeArgs ch;
  auto* charac = app.add_subcommand("characterize", "Fit NOR parameters to characteristic delays");
  charac->add_option("delays", ch.delays, "Delays JSON")->required();
  charac->add_option("--capacitance", ch.capacitance, "Load capacitance C (F)")->required();
  charac->add_option("--out", ch.out, "Parameter JSON path ('-' for stdout)");

  ContinuityArgs co;
  auto* cont = app.add_subcommand("continuity", "Perturb one stimulus and measure the response");
  cont->add_option("netlist", co.netlist, "Netlist JSON")->required();
  cont->add_option("stimuli", co.stimuli, "Stimuli JSON")->required();
  cont->add_option("--signal", co.signal, "Input port to perturb")->required();
  cont->add_option("--kind", co.kind, "shift or pulse")->check(CLI::IsMember({"shift", "pulse"}));
  cont->add_option("--transition", co.transition, "Index of the shifted transition");
  cont->add_option("--pulse-start", co.pulse_start, "Start of the injected pulse (s)");
  cont->add_option("--eps", co.eps, "Perturbation sizes (s)")->delimiter(',');
  cont->add_option("--horizon", co.horizon, "Horizon in seconds");
  cont->add_option("--grid", co.grid_points, "Samples for the analog sup-norm");
  cont->add_option("--out", co.out, "CSV path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kParseError;
  }

  if (simulate->parsed()) return cmd_simulate(sim, err);
  if (sweep->parsed()) return cmd_sweep(sw, err);
  if (charac->parsed()) return cmd_characterize(ch, err);
  return cmd_continuity(co, err);
}

}  // namespace dhg::cli
