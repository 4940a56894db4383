from weaveclust.dot import exchange_graph_dot, matrix_dot, ngraph_dot, quiver_dot
from weaveclust.exchange import exchange_graph
from weaveclust.mutation import ExchangeMatrix, Quiver
from weaveclust.seeds import PCSeed


class TestDot:
    def test_quiver_success(self):
        quiver = Quiver.from_arrows(3, [(0, 1), (1, 2, 2)], n=2)

        assert quiver_dot(quiver) == (
            "digraph quiver {\n"
            "  1 [shape=circle];\n"
            "  2 [shape=circle];\n"
            "  3 [shape=box];\n"
            "  1 -> 2;\n"
            "  2 -> 3 [label=2];\n"
            "}\n"
        )

    def test_matrix_success(self):
        text = matrix_dot(ExchangeMatrix([[0, 1], [-3, 0]]))

        assert '  1 -> 2 [label="1,3"];' in text
        assert text.count("->") == 1

    def test_exchange_graph_success(self):
        graph = exchange_graph(PCSeed.initial(ExchangeMatrix([[0, 1], [-1, 0]])))

        text = exchange_graph_dot(graph)

        assert text.startswith("graph exchange {")
        assert text.count(" -- ") == 5

    def test_ngraph_success(self, linear_factory):
        item = linear_factory(n=2)

        text = ngraph_dot(item)

        assert text.count("penwidth=3") == 2
        assert text.count(" -- ") == len(item.graph.edges)
        assert ngraph_dot(item.graph).count("penwidth") == 0
