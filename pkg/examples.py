"""
Examples - How to use the Schreier graph indices library

Each example builds Schreier graphs of a tree automaton, evaluates a closed form
and compares it with the brute-force value.
"""

from src.extractor import read_corpus, read_tree_file
from src.formulas import (
    spanning_trees_formula,
    tutte_evaluate,
    tutte_factored,
    wiener_formula,
)
from src.logger_config import get_logger_from_config
from src.mealy import apply_state, build_automaton
from src.oracle import DistanceTable, szeged_oracle, wiener_oracle
from src.pipeline import VerificationPipeline
from src.report import IndicesReport, render_report
from src.schreier import build_schreier, e_cycle_decomposition, export_dot, render_word
from src.settings import load_settings
from src.tree_core import path_tree, tree_wiener


# ============================================================================
# Example 1: The automaton of a path
# ============================================================================

def example_automaton():
    """Apply the generators of P_3 to a few words"""
    print("\n" + "="*60)
    print("Example 1: Tree automaton")
    print("="*60)

    automaton = build_automaton(path_tree(3))
    for word in [(1, 1), (2, 2), (1, 3)]:
        image = apply_state(automaton, 1, word)
        print(f"  e1({render_word(word, 3)}) = {render_word(image, 3)}")


# ============================================================================
# Example 2: Schreier graph and its e-cycles
# ============================================================================

def example_graph():
    """Build Gamma_2 of P_3 and list its generator orbits"""
    print("\n" + "="*60)
    print("Example 2: Schreier graph")
    print("="*60)

    graph = build_schreier(build_automaton(path_tree(3)), 2)
    print(f"{len(graph.vertices)} vertices, {len(graph.edges)} edges")
    for cycle in e_cycle_decomposition(graph):
        words = " -> ".join(render_word(w, graph.k) for w in cycle.vertices)
        print(f"  e{cycle.label}, length {cycle.length}: {words}")
    print(export_dot(graph))


# ============================================================================
# Example 3: Closed form versus brute force
# ============================================================================

def example_wiener():
    """Wiener and Szeged indices of Gamma_n for a tree read from the corpus"""
    print("\n" + "="*60)
    print("Example 3: Wiener index")
    print("="*60)

    tree = read_tree_file("data/corpus/spider_221.txt")
    for n in range(1, 4):
        graph = build_schreier(build_automaton(tree), n)
        table = DistanceTable.build(graph)
        formula = wiener_formula(tree.k, n, tree_wiener(tree))
        print(f"  n={n}: formula {formula}, BFS {wiener_oracle(graph, table)}, "
              f"Szeged {szeged_oracle(graph, table)}")


# ============================================================================
# Example 4: Tutte polynomial
# ============================================================================

def example_tutte():
    """Factored Tutte polynomial and two of its evaluations"""
    print("\n" + "="*60)
    print("Example 4: Tutte polynomial")
    print("="*60)

    factored = tutte_factored(3, 2)
    print(f"  T = {factored}")
    print(f"  spanning trees  T(1,1) = {tutte_evaluate(factored, 1, 1)}")
    print(f"  spanning forests T(2,1) = {tutte_evaluate(factored, 2, 1)}")
    print(f"  spanning trees of Gamma_50 for k=3: {spanning_trees_formula(3, 50)}")


# ============================================================================
# Example 5: Full report and verification
# ============================================================================

def example_report_and_verify():
    """Indices report for one instance, then a small verification run"""
    print("\n" + "="*60)
    print("Example 5: Report and verification")
    print("="*60)

    settings = load_settings("config/config.yaml")
    print(render_report(IndicesReport(path_tree(4), 2, settings).build()))

    pipeline = VerificationPipeline(read_corpus("data/corpus"), settings, max_vertices=64)
    report = pipeline.run()
    print(report.summary())


# ============================================================================
# Run Examples
# ============================================================================

if __name__ == "__main__":
    print("\n" + "="*60)
    print("Schreier Graph Indices - Examples")
    print("="*60)
    get_logger_from_config("config/config.yaml")

    try:
        example_automaton()
        example_graph()
        example_wiener()
        example_tutte()
        # example_report_and_verify()  # Uncomment to run (a few seconds)

    except Exception as e:
        print(f"Error: {e}")

    print("\n" + "="*60)
    print("Done! Check logs/schreier.log for detailed logs")
    print("="*60)
