from util import document
from util.cardinal import ONE
from util import kposet
from util import report
from util.command import Group, argument, command, EXIT_CHECK_FAILED


class Analysis(Group):
    @command(brief='Check the K-poset and proper K-poset axioms',
             arguments=[argument('file', help='poset document')])
    def validate(self, args):
        """Prints the K-poset report; exits 1 unless the poset is a proper K-poset."""
        poset = document.read_poset(args.file)
        report_ = kposet.check_k(poset)
        if report_.is_k:
            proper = kposet.check_proper(poset)
            report_ = report_._replace(violations=report_.violations + proper.violations)
        print(report_)
        return 0 if report_.is_proper else EXIT_CHECK_FAILED

    @command(brief='Classify a single-maximum poset as a point, fan or tent',
             arguments=[argument('file', help='poset document')])
    def classify(self, args):
        """Single-maximum posets get one line; otherwise every maximal node is classified
        through its lower set."""
        poset = document.read_poset(args.file)
        if poset.maximal_count() == ONE:
            print(kposet.classify_single_max(poset))
            return
        kposet.require_proper(poset)
        style = report.Style('{:<}  {:>}  {:>}  {:<}')
        t = report.Table(style)
        t += report.Header('node', 'height', 'd', 'lower set')
        t += report.Line()
        for m in sorted(poset.maximal_nodes()):
            if poset.height(m) == 0:
                t += report.Data(m, 0, '-', kposet.Classification.point())
                continue
            lower = poset.lower_set(m)
            t += report.Data(m, poset.height(m), kposet.d_value(lower), kposet.classify_single_max(lower))
        for record in poset.maximal_classes():
            t += report.Data(str(record), 1, 1, f'{record.card} anonymous maxima')
        print(t)
        self.logger.info(f'Classified {len(poset.maximal_nodes())} maximal nodes of {args.file}')

    @command('export-dot', brief='Write the poset as a DOT graph',
             arguments=[argument('file', help='poset document'),
                        argument('-o', '--output', help='output path (default: stdout)')])
    def export_dot(self, args):
        poset = document.read_poset(args.file)
        text = document.export_dot(poset)
        if args.output:
            document.write_text(args.output, text)
        else:
            print(text, end='')


def setup(registry):
    registry.add_group(Analysis(registry))
