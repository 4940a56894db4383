import logging

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.dot import exchange_graph_dot
from weaveclust.exceptions import BudgetExhausted
from weaveclust.exchange import exchange_graph
from weaveclust.management.base import MatrixInputMixin, Output, WeaveclustCommand

logger = logging.getLogger(__name__)


class Command(MatrixInputMixin, WeaveclustCommand):
    help = "Enumerate the exchange graph of a seed."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_matrix_arguments(parser, backend=True)
        parser.add_argument("--max-nodes", type=int, help="stop after this many seeds")
        parser.add_argument("--jobs", type=int, default=1, help="split BFS levels across this many Celery tasks")
        parser.add_argument("--count", action="store_true", help="print only the number of seeds")

    def perform(self, options: dict) -> Output:
        graph = exchange_graph(self.seed_from(options), self.budget(options), options["jobs"])
        data = graph.node_count if options["count"] else {"backend": options["backend"], **graph.to_dict()}
        output = Output(data, lambda: exchange_graph_dot(graph))
        if graph.partial:
            error_msg = format_lazy(_("Exchange graph exceeds the budget of {budget} seeds"), budget=self.budget(options))
            logger.warning(error_msg)
            raise BudgetExhausted(error_msg, partial=output)
        return output
