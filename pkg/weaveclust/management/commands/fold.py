import json
import logging

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.dot import exchange_graph_dot, matrix_dot
from weaveclust.exceptions import BudgetExhausted, MalformedInput
from weaveclust.folding import (
    catalog_triples,
    coxeter_compatibility,
    find_triple,
    fold_matrix,
    folded_exchange_graph,
    invariant_census,
    is_g_admissible,
    is_globally_foldable,
)
from weaveclust.management.base import MatrixInputMixin, Output, WeaveclustCommand
from weaveclust.mutation import ExchangeMatrix, classify_type
from weaveclust.serializers import ActionSerializer, deserialize, load_json

logger = logging.getLogger(__name__)

OPERATIONS = ("fold", "census", "count", "foldable", "coxeter", "list")


class Command(MatrixInputMixin, WeaveclustCommand):
    help = "Fold an exchange matrix along a group action, or check a catalog folding triple."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_matrix_arguments(parser, required=False)
        parser.add_argument("--triple", help="catalog triple such as D4/Z3")
        parser.add_argument("--action", help="group action as JSON or a path to a JSON file")
        parser.add_argument("--op", choices=OPERATIONS, default="fold")
        parser.add_argument("--max-nodes", type=int, help="node budget of the folded search")
        parser.add_argument("--depth", type=int, default=6, help="Coxeter powers compared in both directions")

    def perform(self, options: dict) -> Output:
        if options["op"] == "list":
            return Output([triple.to_dict() for triple in catalog_triples()])
        matrix, action = self.problem(options)
        match options["op"]:
            case "census":
                return Output(invariant_census(matrix, action, self.budget(options)).to_dict())
            case "count":
                graph = folded_exchange_graph(matrix, action, self.budget(options))
                output = Output(graph.node_count, lambda: exchange_graph_dot(graph))
                if graph.partial:
                    error_msg = format_lazy(
                        _("Folded exchange graph exceeds the budget of {budget} seeds"), budget=self.budget(options)
                    )
                    logger.warning(error_msg)
                    raise BudgetExhausted(error_msg, partial=output)
                return output
            case "foldable":
                return Output(is_globally_foldable(matrix, action, self.budget(options)).to_dict())
            case "coxeter":
                results = coxeter_compatibility(matrix, action, options["depth"])
                powers = range(-options["depth"], options["depth"] + 1)
                return Output({"compatible": all(results), "powers": dict(zip(map(str, powers), results))})
        folded = fold_matrix(matrix, action)
        data = {
            **folded.to_dict(),
            "admissible": is_g_admissible(matrix, action).to_dict(),
            "type": str(classify_type(ExchangeMatrix(folded.matrix.principal), self.budget(options))),
        }
        return Output(data, lambda: matrix_dot(folded.matrix))

    def problem(self, options: dict):
        if options.get("triple"):
            triple = find_triple(options["triple"])
            return triple.matrix, triple.action
        if not options.get("action"):
            error_msg = _("Folding needs --triple or a matrix with --action")
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        text = options["action"]
        if text.lstrip().startswith("{"):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as err:
                error_msg = format_lazy(_("Cannot parse --action: {error}"), error=err)
                logger.warning(error_msg)
                raise MalformedInput(error_msg)
        else:
            data = load_json(text)
        return self.matrix_from(options), deserialize(ActionSerializer, data)
