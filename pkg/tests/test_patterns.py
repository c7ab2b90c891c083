import pytest

from src.errors import LabelCollisionError, PatternError, ResolutionError
from src.owl.model import (
    AnnotationAssertion,
    AnnotationProperty,
    Declaration,
    Named,
    Ontology,
    SubClassOf,
    undeclared_references,
)
from src.patterns.dispatch import PatternSpec, get_pattern, instantiate, register_pattern, registered_patterns
from src.patterns.scaffold import (
    LONG_NAME_PREFIX,
    OMIM_PREFIX,
    TOP_LEVEL,
    DiseaseRecord,
    TermRecord,
    declare_top_level,
    disease_class,
    gene_class,
    named_subclass,
    paper_class,
    subclass_pattern,
    term_class,
)
from src.registry.environment import Deprecation, Environment, WarningKind
from tests.conftest import BASE, ONTOLOGY_IRI, ref


def test_top_level_declared(env, onto):
    assert len(TOP_LEVEL) == 7
    for label in TOP_LEVEL:
        assert env.is_declared(label)
        assert Declaration(ref(label)) in onto
        assert AnnotationAssertion(ref(label), AnnotationProperty.LABEL, label) in onto
    assert len(onto) == 14


def test_gene_pattern_shape(env, onto):
    before = len(onto)
    onto = gene_class("G1", onto, env)
    g1 = ref("G1")
    assert len(onto) - before == 3
    assert Declaration(g1) in onto
    assert SubClassOf(g1, Named(ref("Gene"))) in onto
    assert AnnotationAssertion(g1, AnnotationProperty.LABEL, "G1") in onto


def test_gene_reinstantiation_is_noop(env, onto):
    once = gene_class("G1", onto, env)
    assert gene_class("G1", once, env) is once


def test_disease_pattern_annotations(env, onto):
    before = len(onto)
    onto = disease_class(DiseaseRecord("Leigh syndrome", "256000", "subacute necrotizing encephalomyelopathy"), onto, env)
    d = ref("Leigh syndrome")
    assert len(onto) - before == 5
    assert AnnotationAssertion(d, AnnotationProperty.SEE_ALSO, OMIM_PREFIX + "256000") in onto
    assert AnnotationAssertion(d, AnnotationProperty.LABEL, LONG_NAME_PREFIX + "subacute necrotizing encephalomyelopathy") in onto


def test_disease_without_optional_columns(env, onto):
    before = len(onto)
    onto = disease_class(DiseaseRecord("MELAS"), onto, env)
    assert len(onto) - before == 3


def test_conflicting_redefinition_is_a_collision(env, onto):
    onto = disease_class(DiseaseRecord("MD1", "1"), onto, env)
    with pytest.raises(LabelCollisionError, match="label collision"):
        disease_class(DiseaseRecord("MD1", "2"), onto, env)
    with pytest.raises(LabelCollisionError):
        gene_class("MD1", onto, env)


def test_named_pattern_under_any_parent(env, onto):
    onto = named_subclass("crista", "MitochondrialAnatomy", onto, env)
    assert SubClassOf(ref("crista"), Named(ref("MitochondrialAnatomy"))) in onto
    with pytest.raises(ResolutionError, match="Organelle"):
        named_subclass("x", "Organelle", onto, env)


def test_undeclared_parent_reported_once_when_collecting():
    env = Environment(BASE, collect_errors=True)
    onto = declare_top_level(Ontology.empty(ONTOLOGY_IRI, BASE), env)
    onto = named_subclass("x", "Organelle", onto, env)
    onto = named_subclass("y", "Organelle", onto, env)
    assert [e.label for e in env.errors] == ["Organelle", "Organelle"]
    assert Declaration(ref("x")) in onto


def test_empty_name_rejected(env, onto):
    with pytest.raises(PatternError, match="empty class name"):
        subclass_pattern("  ", "Gene", onto, env)


def test_term_links_to_paper(env, onto):
    onto = paper_class("PMID-1", onto, env)
    before = len(onto)
    onto = term_class(TermRecord("PMID-1", "T1"), onto, env)
    t1 = ref("T1")
    assert len(onto) - before == 4
    assert SubClassOf(t1, Named(ref("Term"))) in onto
    assert AnnotationAssertion(t1, AnnotationProperty.SEE_ALSO, "PMID-1") in onto
    assert paper_class("PMID-1", onto, env) is onto
    assert undeclared_references(onto) == set()


def test_term_before_paper_fails(env, onto):
    with pytest.raises(ResolutionError, match="undeclared entity: PMID-9"):
        term_class(TermRecord("PMID-9", "T1"), onto, env)


def test_term_for_deprecated_paper_warns_and_uses_replacement():
    env = Environment(BASE, deprecations={"PMID-old": Deprecation("PMID-old", "PMID-new")})
    onto = declare_top_level(Ontology.empty(ONTOLOGY_IRI, BASE), env)
    onto = paper_class("PMID-new", onto, env)
    onto = term_class(TermRecord("PMID-old", "T1"), onto, env)
    assert AnnotationAssertion(ref("T1"), AnnotationProperty.SEE_ALSO, "PMID-new") in onto
    assert [w.kind for w in env.warnings] == [WarningKind.DEPRECATED_REFERENCE]
    assert env.warnings[0].label == "PMID-old"


def test_records_validate():
    with pytest.raises(ValueError):
        DiseaseRecord(" ")
    with pytest.raises(ValueError):
        TermRecord("", "T1")


# ---------------------- Dispatch ----------------------


def test_builtin_patterns_registered():
    assert {"gene", "disease", "named", "paper", "term"} <= set(registered_patterns())


def test_instantiate_by_name(env, onto):
    onto = instantiate("disease", {"name": "MD1", "omim": "1", "long_name": None}, onto, env)
    onto = instantiate("named", {"name": "MTPROT1", "parent": "Protein"}, onto, env)
    assert SubClassOf(ref("MD1"), Named(ref("Disease"))) in onto
    assert SubClassOf(ref("MTPROT1"), Named(ref("Protein"))) in onto


def test_instantiate_errors(env, onto):
    with pytest.raises(PatternError, match="unknown pattern: nope"):
        instantiate("nope", {"name": "x"}, onto, env)
    with pytest.raises(PatternError, match="missing required binding 'name'"):
        instantiate("gene", {}, onto, env)
    with pytest.raises(PatternError, match="unexpected binding"):
        instantiate("gene", {"name": "G1", "colour": "red"}, onto, env)


def test_register_custom_pattern(env, onto):
    def _comment_gene(b, o, e, span):
        return subclass_pattern(b["name"], "Gene", o, e, [(AnnotationProperty.COMMENT, b["note"])], span=span)

    register_pattern(PatternSpec("annotated-gene", _comment_gene, ("name", "note"), parent="Gene"))
    onto = instantiate("annotated-gene", {"name": "G7", "note": "nuclear encoded"}, onto, env)
    assert AnnotationAssertion(ref("G7"), AnnotationProperty.COMMENT, "nuclear encoded") in onto
    with pytest.raises(PatternError, match="already registered"):
        register_pattern(get_pattern("gene"))
