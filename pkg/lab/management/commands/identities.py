from lab.management.base import EXIT_FAILED, EXIT_OK, LabCommand
from lab.services.identity_suite import IdentitySuiteService


class Command(LabCommand):
    help = 'Check every exact identity on seeded samples; one PASS/FAIL line each'
    run_name = 'identities'

    def add_run_arguments(self, parser):
        parser.add_argument('--inject-fault', dest='inject_fault', choices=('eta',),
                            help='perturb one computation so its identity must fail')

    def run(self, config):
        results = IdentitySuiteService.run(config)
        report = IdentitySuiteService.format_report(config, results)
        return report, EXIT_OK if all(r.passed for r in results) else EXIT_FAILED
