"""Run the bundled multi-agent simulation and chart how views synchronize.

Four agents with private affinities browse two topics round after round,
feeding their likes back into the shared graph. The printed series shows
the fraction of agent pairs that agree on a topic's best document.

Run: python3 demos/simulation_demo.py
"""

from beamgraph import load_builtin_config, simulate

config = load_builtin_config("default")
result = simulate(config)

print(f"seed={config.seed} rounds={config.rounds} agents={len(config.population)}")
print("round  synchronization  appended")
for m in result.metrics:
    bar = "#" * round(m.synchronization * 30)
    print(f"{m.round:>5}  {m.synchronization:>15.3f}  {m.viewpoints_appended:>8}  {bar}")

print(f"\nfinal graph: {len(result.graph.resources)} resources, "
      f"{len(result.graph.viewpoints)} viewpoints, version {result.graph.version}")
