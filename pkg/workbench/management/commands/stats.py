from workbench.reports import stats_report

from ._base import WorkbenchCommand


class Command(WorkbenchCommand):
    help = "Print f-vector, layer vector, width and excess of a prismatoid"

    def add_arguments(self, parser):
        parser.add_argument('path')

    def run(self, *args, **options):
        self.report(stats_report(self.load_prismatoid(options['path'])))
