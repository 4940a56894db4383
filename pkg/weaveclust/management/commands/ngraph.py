import logging

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.dot import ngraph_dot, quiver_dot
from weaveclust.exceptions import MalformedInput
from weaveclust.management.base import Output, WeaveclustCommand, one_based
from weaveclust.mutation import classify_type
from weaveclust.ngraph import (
    NGraph,
    NGraphWithCycles,
    Symmetry,
    boundary_word,
    boundary_words_annulus,
    build_affine_d,
    build_linear,
    build_tripod,
    concatenate,
    coxeter_padding,
    equivariance_check,
    is_invariant,
    legendrian_coxeter_mutation,
    mutate_sequence,
    quiver_from_cycles,
)
from weaveclust.serializers import NGraphSerializer, deserialize, load_json

logger = logging.getLogger(__name__)

BUILDERS = {"linear": (build_linear, 1), "tripod": (build_tripod, 3), "affine_d": (build_affine_d, 1)}
PADDING_FAMILIES = {"linear": "A", "tripod": "tripod", "affine_d": "affine_d"}
OPERATIONS = ("show", "quiver", "mutate", "coxeter", "rotate", "conjugate", "padding", "glue", "equivariance", "symmetry")


class Command(WeaveclustCommand):
    help = "Build, mutate and inspect N-graphs with cycles."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--family", choices=sorted(BUILDERS))
        source.add_argument("--input", help="N-graph JSON file")
        parser.add_argument("--params", type=int, nargs="*", default=[], help="family parameters: n or a b c")
        parser.add_argument("--op", choices=OPERATIONS, default="show")
        parser.add_argument("--at", type=int, nargs="*", default=[], help="cycles to mutate in order, 1-based")
        parser.add_argument("--inverse", action="store_true", help="inverse Legendrian Coxeter mutation")
        parser.add_argument("--steps", type=int, default=0, help="rotation steps of the boundary")
        parser.add_argument("--conjugate", action="store_true", help="symmetry includes the colour conjugation")
        parser.add_argument("--permutation", type=int, nargs="*", help="expected cycle permutation, 1-based")
        parser.add_argument("--trials", type=int, help="random sequences for the equivariance check")
        parser.add_argument("--seed", type=int, help="random seed for the equivariance check")
        parser.add_argument("--max-skipped", type=int, help="fail the equivariance check when more mutations than this are skipped")
        parser.add_argument("--budget", type=int, help="braid search budget of the padding")

    def perform(self, options: dict) -> Output:
        item = self.item(options)
        match options["op"]:
            case "quiver":
                quiver = quiver_from_cycles(item)
                data = {
                    "arrows": [[i + 1, j + 1, multiplicity] for i, j, multiplicity in quiver.arrows],
                    "classes": [cycle.sign for cycle in item.cycles],
                    "type": str(classify_type(quiver.to_matrix())),
                }
                return Output(data, lambda: quiver_dot(quiver))
            case "mutate":
                item = mutate_sequence(item, one_based(options["at"]))
            case "coxeter":
                item = legendrian_coxeter_mutation(item, options["inverse"])
            case "rotate":
                item = item.rotated(options["steps"])
            case "conjugate":
                item = item.conjugated()
            case "padding" | "glue":
                padding = coxeter_padding(
                    PADDING_FAMILIES[self.family(options)], *options["params"], budget=options["budget"]
                )
                if options["op"] == "glue":
                    inner = item.conjugated() if options["family"] == "tripod" else item
                    item = concatenate(padding, inner)
                else:
                    outer, inner = boundary_words_annulus(padding)
                    data = {**padding.to_dict(), "outer_word": str(outer), "inner_word": str(inner)}
                    return Output(data, lambda: ngraph_dot(padding))
            case "equivariance":
                report = equivariance_check(
                    item, options["trials"], seed=options["seed"], max_skipped=options["max_skipped"]
                )
                return Output(report.to_dict())
            case "symmetry":
                permutation = None if options["permutation"] is None else tuple(one_based(options["permutation"]))
                symmetry = Symmetry(options["steps"], options["conjugate"], permutation)
                return Output({"invariant": is_invariant(item, symmetry)})
        data = {**item.to_dict(), "boundary_word": str(boundary_word(item))}
        return Output(data, lambda: ngraph_dot(item))

    def item(self, options: dict):
        if options.get("input"):
            loaded = deserialize(NGraphSerializer, load_json(options["input"]))
            if isinstance(loaded, NGraphWithCycles):
                return loaded
            if isinstance(loaded, NGraph):
                return NGraphWithCycles(loaded, ())
            error_msg = _("Expected a disk N-graph, got an annulus")
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        builder, arity = BUILDERS[options["family"]]
        if len(options["params"]) != arity:
            error_msg = format_lazy(
                _("Family {family} takes {arity} parameters, got {count}"),
                family=options["family"],
                arity=arity,
                count=len(options["params"]),
            )
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        return builder(*options["params"])

    @staticmethod
    def family(options: dict) -> str:
        if not options.get("family"):
            error_msg = _("Paddings are built for --family graphs only")
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        return options["family"]
