from workbench.complex_core import dual_diameter, dual_graph, is_dual_connected

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Dual-graph diameter of a COMPLEX (or PRISMATOID) file"

    def add_arguments(self, parser):
        parser.add_argument('path')

    def run(self, *args, **options):
        complex_ = self.load_complex(options['path'])
        graph = dual_graph(complex_)
        value = dual_diameter(complex_, graph=graph)
        vertices = len(complex_.vertices)
        self.report({
            "dim": complex_.dim,
            "vertices": vertices,
            "facets": complex_.facet_count,
            "diameter": value,
            "hirsch_bound": vertices - complex_.dim - 1,
            "non_hirsch": value > vertices - complex_.dim - 1,
        })
        return is_dual_connected(complex_)
