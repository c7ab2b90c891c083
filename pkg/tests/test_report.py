from src.owl.expr import Frame, owl_class
from src.owl.model import Ontology
from src.patterns.scaffold import gene_class, named_subclass
from src.serialize.report import SUPPORT, render_report, report_frame, stats


def test_counts_by_top_level_branch(env, onto):
    onto = gene_class("G1", onto, env)
    onto = gene_class("G2", onto, env)
    onto = named_subclass("crista", "MitochondrialAnatomy", onto, env)
    # grandchild counted under its nearest top-level ancestor
    onto = named_subclass("crista junction", "crista", onto, env)
    _, onto = owl_class("Helper", Frame.of(label="Helper"), onto, env)

    report = stats(onto, warnings=["w"], sources={"Gene": ["genes.txt"]})
    assert report.counts["Gene"] == 2
    assert report.counts["MitochondrialAnatomy"] == 2
    assert report.counts[SUPPORT] == 7 + 1
    assert report.scaffold_total == 4
    assert report.term_total == 0
    assert report.warning_count == 1
    assert sum(report.counts.values()) == report.axiom_counts["Declaration"]


def test_frame_omits_empty_term_layer(env, onto):
    report = stats(gene_class("G1", onto, env))
    frame = report_frame(report)
    assert list(frame["Class type"]) == ["Disease", "Gene", "Human Anatomy", "Mitochondrial Anatomy", "Protein"]
    assert list(frame["Data source"]) == ["-"] * 5
    assert "Scaffold total: 1" in render_report(report)


def test_empty_ontology():
    report = stats(Ontology.empty("http://example.org/empty"))
    assert report.scaffold_total == 0
    assert report.counts[SUPPORT] == 0


def test_long_source_lists_collapse(env, onto):
    three = ["a.txt", "b.txt", "c.txt"]
    report = stats(gene_class("G1", onto, env), sources={"Gene": three, "Term": [f"t{i}.tsv" for i in range(30)]})
    frame = report_frame(report).set_index("Class type")
    assert frame.loc["Gene", "Data source"] == "a.txt, b.txt, c.txt"
    assert frame.loc["Term", "Data source"] == "t0.tsv (+29 more)"
